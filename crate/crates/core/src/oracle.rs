//! Independent brute-force verification: exhaustive slide/rotation script
//! enumeration, exhaustive ordering enumeration, and cross-validation of the
//! axiomatic move deltas against the geometric arc layer.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arc::{slide_reroute, MarkedSphere};
use crate::invariant::{compute_i, hat_i};
use crate::moves::{self, Move, Surface};
use crate::system::{DiscIx, Kind, System};
use crate::text;
use crate::{Error, Result};

/// All per-eye orderings of the Whitney discs, fed through the pipeline;
/// a well-formed system yields a singleton set.
pub fn all_orderings_i(sys: &System) -> Result<BTreeSet<Vec<bool>>> {
    for eye in sys.eyes() {
        if eye.n > 4 {
            return Err(Error::BadMove(String::from("ordering enumeration is desk scale: n <= 4")));
        }
    }
    let per_eye: Vec<Vec<Vec<String>>> = (0..sys.eyes().len())
        .map(|eye| {
            let ws: Vec<String> = moves::default_w_order(sys, eye)
                .into_iter()
                .map(|d| sys.disc(d).name.clone())
                .collect();
            permutations(&ws)
        })
        .collect();
    let mut results = BTreeSet::new();
    let mut pick = alloc::vec![0usize; per_eye.len()];
    loop {
        let mut order = BTreeMap::new();
        for (eye, idx) in pick.iter().enumerate() {
            order.insert(eye, per_eye[eye][*idx].clone());
        }
        results.insert(compute_i(sys, Some(&order))?.bits);
        // Odometer over the per-eye permutation indices.
        let mut done = true;
        for (eye, idx) in pick.iter_mut().enumerate() {
            *idx += 1;
            if *idx < per_eye[eye].len() {
                done = false;
                break;
            }
            *idx = 0;
        }
        if done {
            break;
        }
    }
    Ok(results)
}

fn permutations(items: &[String]) -> Vec<Vec<String>> {
    if items.is_empty() {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, x) in items.iter().enumerate() {
        let mut rest: Vec<String> = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x.clone());
            out.push(tail);
        }
    }
    out
}

/// Exhaustively enumerates slide/rotation scripts from an IA system up to
/// `depth`, collecting the invariant of every embedded-arc state reached.
pub fn all_slide_scripts_i(sys: &System, depth: usize) -> Result<BTreeSet<Vec<bool>>> {
    for eye in 0..sys.eyes().len() {
        if !sys.components(eye)?.cycles.is_empty() {
            return Err(Error::NotIa(eye));
        }
        if sys.eyes()[eye].n > 3 {
            return Err(Error::BadMove(String::from("script enumeration is desk scale: n <= 3")));
        }
    }
    if depth > 4 {
        return Err(Error::BadMove(String::from("script enumeration is desk scale: depth <= 4")));
    }
    let mut results = BTreeSet::new();
    let mut seen = BTreeSet::new();
    let mut frontier = alloc::vec![sys.clone()];
    seen.insert(text::content_hash(sys));
    record_if_ea(sys, &mut results)?;
    for level in 0..depth {
        let mut next = Vec::new();
        for state in &frontier {
            for mv in candidate_moves(state) {
                let Ok(new_state) = moves::apply(state, &mv) else { continue };
                // A state can only come back to EA if every crossing can
                // still be swung away in the remaining budget.
                let remaining = depth - level - 1;
                if total_crossings(&new_state) as usize > remaining {
                    continue;
                }
                let h = text::content_hash(&new_state);
                if !seen.insert(h) {
                    continue;
                }
                record_if_ea(&new_state, &mut results)?;
                next.push(new_state);
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    if results.is_empty() {
        return Err(Error::BadMove(format!(
            "no embedded-arc state reached within depth {depth}"
        )));
    }
    Ok(results)
}

fn record_if_ea(sys: &System, results: &mut BTreeSet<Vec<bool>>) -> Result<()> {
    if total_crossings(sys) == 0 {
        results.insert(hat_i(sys)?);
    }
    Ok(())
}

fn total_crossings(sys: &System) -> u32 {
    let mut t = 0;
    for eye in 0..sys.eyes().len() {
        let discs = sys.eye_discs(eye);
        for (i, &a) in discs.iter().enumerate() {
            for &b in discs.iter().skip(i + 1) {
                t += sys.xg().get(a.0, b.0) + sys.xr().get(a.0, b.0);
            }
        }
    }
    t
}

fn candidate_moves(sys: &System) -> Vec<Move> {
    let mut out = Vec::new();
    let nd = sys.discs().len();
    for surface in [Surface::G, Surface::R] {
        for i in 0..nd {
            for j in 0..nd {
                if i == j {
                    continue;
                }
                let (a, b) = (DiscIx(i), DiscIx(j));
                if sys.x(surface).get(i, j) > 0 && !sys.disc(a).is_cross() && !sys.disc(b).is_cross()
                {
                    out.push(Move::Swing {
                        surface,
                        mover: sys.disc(b).name.clone(),
                        target: sys.disc(a).name.clone(),
                    });
                }
                if sys.disc(a).kind == sys.disc(b).kind {
                    for twist in [0, 1] {
                        out.push(Move::Slide {
                            surface,
                            mover: sys.disc(a).name.clone(),
                            over: sys.disc(b).name.clone(),
                            twist,
                            path: Default::default(),
                        });
                    }
                }
            }
        }
        for i in 0..nd {
            let d = DiscIx(i);
            for corner in [sys.disc(d).corners.0, sys.disc(d).corners.1] {
                for sign in [1i8, -1] {
                    out.push(Move::Rotate {
                        disc: sys.disc(d).name.clone(),
                        surface,
                        corner,
                        sign,
                    });
                }
            }
        }
    }
    out
}

/// Outcome of one axiomatic-vs-geometric comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossReport {
    pub mismatches: Vec<String>,
}

impl CrossReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Applies `mv` axiomatically and geometrically (arc reroute, reduction and
/// recount) and compares the crossing matrices exactly. The system must be a
/// single eye with concrete arcs on every disc.
pub fn cross_validate(sys: &System, mv: &Move) -> Result<CrossReport> {
    if sys.eyes().len() != 1 || !sys.cross_points().is_empty() {
        return Err(Error::BadMove(String::from("cross-validation runs on single-eye systems")));
    }
    if sys.discs().iter().any(|d| d.g_arc.is_none() || d.r_arc.is_none()) {
        return Err(Error::BadMove(String::from("geometric layer unavailable: arcs missing")));
    }
    let pre = sys.validate();
    if !pre.is_empty() {
        return Err(Error::Invalid(format!("{}: {}", pre[0].invariant, pre[0].detail)));
    }
    let axiomatic = moves::apply(sys, mv)?;
    let mut report = CrossReport { mismatches: Vec::new() };
    match mv {
        Move::Slide { surface, mover, over, .. } => {
            let m = sys.disc_by_name(mover)?;
            let o = sys.disc_by_name(over)?;
            let sphere = MarkedSphere { points: sys.point_count(sys.disc(m).pair_key()) };
            let (m_arc, o_arc) = match surface {
                Surface::G => (&sys.disc(m).g_arc, &sys.disc(o).g_arc),
                Surface::R => (&sys.disc(m).r_arc, &sys.disc(o).r_arc),
            };
            let new_arc = slide_reroute(m_arc.as_ref().unwrap(), o_arc.as_ref().unwrap(), &sphere);
            for e in 0..sys.discs().len() {
                if e == m.0 {
                    continue;
                }
                let e_arc = match surface {
                    Surface::G => sys.disc(DiscIx(e)).g_arc.as_ref().unwrap(),
                    Surface::R => sys.disc(DiscIx(e)).r_arc.as_ref().unwrap(),
                };
                let counted = crate::arc::crossings_on(&new_arc, e_arc, &sphere) as u32;
                let claimed = axiomatic.x(*surface).get(m.0, e);
                if counted != claimed {
                    report.mismatches.push(format!(
                        "slide {mover} over {over}: X{}({mover},{}) axiomatic {claimed}, geometric {counted}",
                        surface.label(),
                        sys.disc(DiscIx(e)).name,
                    ));
                }
            }
        }
        Move::Rotate { disc, surface, corner, sign } => {
            // The rotation hooks the opposite arc around the corner; the
            // geometric expectation is one extra (or one fewer) crossing with
            // the corner partner and nothing else.
            let d = sys.disc_by_name(disc)?;
            let (focc, wocc) = sys.occupancy(sys.disc(d).pair_key());
            let partner = match sys.disc(d).kind {
                Kind::Finger => wocc[*corner],
                Kind::Whitney => focc[*corner],
            };
            let opp = surface.opposite();
            for e in 0..sys.discs().len() {
                if e == d.0 {
                    continue;
                }
                let expected = if Some(DiscIx(e)) == partner {
                    let base = sys.x(opp).get(d.0, e) as i64 + *sign as i64;
                    base.max(0) as u32
                } else {
                    sys.x(opp).get(d.0, e)
                };
                let claimed = axiomatic.x(opp).get(d.0, e);
                if expected != claimed {
                    report.mismatches.push(format!(
                        "rotate {disc}: X{}({disc},{}) axiomatic {claimed}, geometric {expected}",
                        opp.label(),
                        sys.disc(DiscIx(e)).name,
                    ));
                }
            }
        }
        Move::Birth { .. } | Move::Saddle { .. } => {
            // New discs carry empty arcs at the trailing points; all their
            // crossings vanish geometrically.
            let base = sys.discs().len();
            for e in base..axiomatic.discs().len() {
                if axiomatic.xg().row_sum(e) != 0 || axiomatic.xr().row_sum(e) != 0 {
                    report.mismatches.push(format!(
                        "birth: fresh disc {} carries crossings",
                        axiomatic.disc(DiscIx(e)).name
                    ));
                }
            }
        }
        Move::SphereSlide { .. } | Move::CliffordAdd { .. } | Move::Spin { .. } => {
            // Boundary arcs are untouched; the crossing matrices must agree.
            for s in [Surface::G, Surface::R] {
                for i in 0..sys.discs().len() {
                    for j in (i + 1)..sys.discs().len() {
                        if sys.x(s).get(i, j) != axiomatic.x(s).get(i, j) {
                            report.mismatches.push(format!(
                                "interior move changed X{}({},{})",
                                s.label(),
                                sys.disc(DiscIx(i)).name,
                                sys.disc(DiscIx(j)).name,
                            ));
                        }
                    }
                }
            }
        }
        _ => {
            return Err(Error::BadMove(format!(
                "cross-validation does not cover `{}`",
                text::serialize_move(mv)
            )));
        }
    }
    Ok(report)
}
