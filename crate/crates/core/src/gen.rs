//! Seeded random generation of valid finger/Whitney systems and applicable
//! move sequences. Systems are built constructively: a standard base, random
//! interior intersections realized by linking-sphere tubes, then a scramble
//! of engine moves — so every sample is realizable and the invariance
//! theorems apply to it.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::moves::{self, Move, Surface};
use crate::system::{DiscIx, Kind, PairKey, System};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct Params {
    pub max_eyes: usize,
    pub max_discs: usize,
    pub cross_pairs: usize,
    pub scramble_moves: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params { max_eyes: 2, max_discs: 4, cross_pairs: 0, scramble_moves: 6 }
    }
}

pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn seeded(seed: u64) -> Rng {
        Rng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn below(&mut self, n: usize) -> usize {
        if n <= 1 {
            return 0;
        }
        (self.0.next_u64() % n as u64) as usize
    }

    pub fn flip(&mut self) -> bool {
        self.0.next_u64() % 2 == 1
    }

    fn pick<'a, T>(&mut self, items: &'a [T]) -> Option<&'a T> {
        if items.is_empty() {
            None
        } else {
            Some(&items[self.below(items.len())])
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            items.swap(i, self.below(i + 1));
        }
    }
}

/// Reproducible random system: validate(result) is empty for every seed.
pub fn random_system(seed: u64, p: &Params) -> System {
    let mut rng = Rng::seeded(seed);
    let eyes = 1 + rng.below(p.max_eyes.max(1));
    let sizes: Vec<usize> = (0..eyes).map(|_| rng.below(p.max_discs + 1)).collect();
    let mut sys = System::standard(&sizes);
    // Interior intersections on the base: any pattern of finger/Whitney
    // parities is realizable by tubing Whitney discs into linking spheres.
    for eye in 0..eyes {
        let discs = sys.eye_discs(eye);
        for &f in &discs {
            if sys.disc(f).kind != Kind::Finger {
                continue;
            }
            for &w in &discs {
                if sys.disc(w).kind != Kind::Whitney {
                    continue;
                }
                if rng.below(4) == 0 {
                    sys.m_mut().flip(f.0, w.0);
                }
            }
        }
    }
    // Cross pairs: birth-like cancelling cross discs between distinct eyes.
    if eyes > 1 {
        for _ in 0..p.cross_pairs {
            let r = rng.below(eyes);
            let mut g = rng.below(eyes);
            if r == g {
                g = (g + 1) % eyes;
            }
            add_cross_pair(&mut sys, r, g);
        }
    }
    for _ in 0..p.scramble_moves {
        if let Some(mv) = random_applicable_move(&mut rng, &sys) {
            if let Ok(next) = moves::apply(&sys, &mv) {
                sys = next;
            }
        }
    }
    debug_assert!(sys.validate().is_empty());
    sys
}

fn add_cross_pair(sys: &mut System, r_eye: usize, g_eye: usize) {
    let key = PairKey(r_eye, g_eye);
    let (neg, pos) = sys.append_point_pair(key);
    for kind in [Kind::Finger, Kind::Whitney] {
        let name = sys.fresh_name(kind);
        sys.push_disc(crate::system::Disc {
            name,
            kind,
            r_eye,
            g_eye,
            corners: (neg.min(pos), neg.max(pos)),
            germ: (0, 0),
            offset: crate::homology::H2Class::zero(),
            g_arc: None,
            r_arc: None,
        });
    }
}

/// Draws one move applicable to the system, or None when nothing fits. Moves
/// are drawn from the invariance-safe families: sources of Clifford adds are
/// never prospective switch-outs and keep both flanking discs, sphere slides
/// over single-flanked discs stay within one component, and spins act on
/// cycle-free eyes only.
pub fn random_applicable_move(rng: &mut Rng, sys: &System) -> Option<Move> {
    for _ in 0..40 {
        let kind = rng.below(10);
        let mv = match kind {
            0 => pick_slide(rng, sys),
            1 => pick_rotation(rng, sys),
            2 => pick_clifford(rng, sys),
            3 => pick_sphere_slide(rng, sys),
            4 => pick_birth(rng, sys),
            5 => pick_death(rng, sys),
            6 => pick_x3(rng, sys),
            7 => pick_x3_remove(rng, sys),
            8 => pick_saddle(rng, sys),
            9 => pick_spin(rng, sys),
            _ => None,
        };
        if let Some(mv) = mv {
            if moves::apply(sys, &mv).is_ok() {
                return Some(mv);
            }
        }
    }
    None
}

fn same_kind_pairs(sys: &System, surface: Option<Surface>) -> Vec<(DiscIx, DiscIx)> {
    let mut out = Vec::new();
    for i in 0..sys.discs().len() {
        for j in 0..sys.discs().len() {
            if i == j {
                continue;
            }
            let (a, b) = (sys.disc(DiscIx(i)), sys.disc(DiscIx(j)));
            if a.kind != b.kind {
                continue;
            }
            let shared = match surface {
                Some(Surface::G) => a.g_eye == b.g_eye,
                Some(Surface::R) => a.r_eye == b.r_eye,
                None => a.pair_key() == b.pair_key(),
            };
            if shared {
                out.push((DiscIx(i), DiscIx(j)));
            }
        }
    }
    out
}

fn pick_slide(rng: &mut Rng, sys: &System) -> Option<Move> {
    let surface = if rng.flip() { Surface::G } else { Surface::R };
    let pairs = same_kind_pairs(sys, Some(surface));
    let &(m, o) = rng.pick(&pairs)?;
    Some(Move::Slide {
        surface,
        mover: sys.disc(m).name.clone(),
        over: sys.disc(o).name.clone(),
        twist: rng.below(2) as i64,
        path: Default::default(),
    })
}

fn pick_rotation(rng: &mut Rng, sys: &System) -> Option<Move> {
    if sys.discs().is_empty() {
        return None;
    }
    let d = DiscIx(rng.below(sys.discs().len()));
    let corner = if rng.flip() { sys.disc(d).corners.0 } else { sys.disc(d).corners.1 };
    let surface = if rng.flip() { Surface::G } else { Surface::R };
    Some(Move::Rotate { disc: sys.disc(d).name.clone(), surface, corner, sign: 1 })
}

/// Prospective switch-outs of every eye under the default ordering.
fn canonical_outs(sys: &System) -> Vec<DiscIx> {
    let mut outs = Vec::new();
    for eye in 0..sys.eyes().len() {
        let Ok(comps) = sys.components(eye) else { continue };
        let order = moves::default_w_order(sys, eye);
        let rank = |d: DiscIx| order.iter().position(|&x| x == d).unwrap_or(usize::MAX);
        for cyc in &comps.cycles {
            if let Some(s) = cyc
                .iter()
                .copied()
                .filter(|&d| sys.disc(d).kind == Kind::Whitney)
                .min_by_key(|&d| rank(d))
            {
                outs.push(s);
            }
        }
    }
    outs
}

fn flanks(sys: &System, d: DiscIx) -> Vec<DiscIx> {
    let key = sys.disc(d).pair_key();
    let (focc, wocc) = sys.occupancy(key);
    let opp = match sys.disc(d).kind {
        Kind::Finger => &wocc,
        Kind::Whitney => &focc,
    };
    let mut out = Vec::new();
    for c in [sys.disc(d).corners.0, sys.disc(d).corners.1] {
        if let Some(e) = opp[c] {
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
    out
}

fn pick_clifford(rng: &mut Rng, sys: &System) -> Option<Move> {
    let outs = canonical_outs(sys);
    let mut safe = Vec::new();
    for (t, s) in same_kind_pairs(sys, None) {
        if outs.contains(&s) || flanks(sys, s).len() < 2 {
            continue;
        }
        if flanks(sys, s).iter().any(|f| outs.contains(f)) {
            continue;
        }
        safe.push((t, s));
    }
    let &(t, s) = rng.pick(&safe)?;
    Some(Move::CliffordAdd {
        target: sys.disc(t).name.clone(),
        source: sys.disc(s).name.clone(),
        count: 1 + rng.below(2) as u64,
    })
}

fn pick_sphere_slide(rng: &mut Rng, sys: &System) -> Option<Move> {
    let outs = canonical_outs(sys);
    let mut safe = Vec::new();
    for (m, o) in same_kind_pairs(sys, None) {
        let fl = flanks(sys, o);
        if fl.iter().any(|f| outs.contains(f)) {
            continue;
        }
        if fl.len() < 2 && !same_component(sys, m, o) {
            continue;
        }
        safe.push((m, o));
    }
    let &(m, o) = rng.pick(&safe)?;
    Some(Move::SphereSlide { mover: sys.disc(m).name.clone(), over: sys.disc(o).name.clone() })
}

fn same_component(sys: &System, a: DiscIx, b: DiscIx) -> bool {
    let da = sys.disc(a);
    if da.pair_key() != sys.disc(b).pair_key() {
        return false;
    }
    if da.is_cross() {
        return true;
    }
    let Ok(comps) = sys.components(da.r_eye) else { return false };
    if comps.path.contains(&a) && comps.path.contains(&b) {
        return true;
    }
    comps.cycles.iter().any(|c| c.contains(&a) && c.contains(&b))
}

fn pick_birth(rng: &mut Rng, sys: &System) -> Option<Move> {
    if sys.eyes().is_empty() {
        return None;
    }
    Some(Move::Birth { eye: rng.below(sys.eyes().len()) })
}

fn pick_death(rng: &mut Rng, sys: &System) -> Option<Move> {
    let mut candidates = Vec::new();
    for i in 0..sys.discs().len() {
        for j in 0..sys.discs().len() {
            let (f, w) = (sys.disc(DiscIx(i)), sys.disc(DiscIx(j)));
            if f.kind == Kind::Finger
                && w.kind == Kind::Whitney
                && !f.is_cross()
                && f.r_eye == w.r_eye
                && !w.is_cross()
                && f.corners == w.corners
            {
                candidates.push(Move::Death {
                    eye: f.r_eye,
                    f: f.name.clone(),
                    w: w.name.clone(),
                });
            }
        }
    }
    rng.pick(&candidates).cloned()
}

fn pick_x3(rng: &mut Rng, sys: &System) -> Option<Move> {
    if sys.eyes().is_empty() {
        return None;
    }
    let eye = rng.below(sys.eyes().len());
    let count = sys.point_count(PairKey(eye, eye));
    Some(Move::X3 { eye, at: rng.below(count) })
}

fn pick_x3_remove(rng: &mut Rng, sys: &System) -> Option<Move> {
    let mut candidates = Vec::new();
    for i in 0..sys.discs().len() {
        for j in 0..sys.discs().len() {
            let (f, w) = (sys.disc(DiscIx(i)), sys.disc(DiscIx(j)));
            if f.kind != Kind::Finger || w.kind != Kind::Whitney || f.pair_key() != w.pair_key() {
                continue;
            }
            let mv = Move::X3Remove { eye: f.r_eye, f: f.name.clone(), w: w.name.clone() };
            if moves::apply(sys, &mv).is_ok() {
                candidates.push(mv);
            }
        }
    }
    rng.pick(&candidates).cloned()
}

fn pick_saddle(rng: &mut Rng, sys: &System) -> Option<Move> {
    let eyes_with_points: Vec<usize> =
        (0..sys.eyes().len()).filter(|&e| sys.eyes()[e].n >= 1).collect();
    let &eye = rng.pick(&eyes_with_points)?;
    let count = sys.point_count(PairKey(eye, eye));
    let pos: Vec<usize> = (0..count).filter(|p| p % 2 == 0).collect();
    let neg: Vec<usize> = (0..count).filter(|p| p % 2 == 1).collect();
    let &x = rng.pick(&pos)?;
    let &y = rng.pick(&neg)?;
    Some(Move::Saddle { eye, x, y })
}

fn pick_spin(rng: &mut Rng, sys: &System) -> Option<Move> {
    let mut candidates = Vec::new();
    for eye in 0..sys.eyes().len() {
        let Ok(comps) = sys.components(eye) else { continue };
        if !comps.cycles.is_empty() {
            continue;
        }
        let ws: Vec<DiscIx> = sys
            .eye_discs(eye)
            .into_iter()
            .filter(|&d| sys.disc(d).kind == Kind::Whitney)
            .collect();
        if ws.len() < 2 {
            continue;
        }
        for &s in &ws {
            for &t in &ws {
                if s != t {
                    candidates.push((eye, s, t));
                }
            }
        }
    }
    let &(eye, s, t) = rng.pick(&candidates)?;
    Some(Move::Spin {
        eye,
        src: sys.disc(s).name.clone(),
        targets: alloc::vec![sys.disc(t).name.clone()],
    })
}

// --- geometric corpus --------------------------------------------------------

/// Single-eye system with concrete standard arcs, lightly scrambled by
/// geometrically maintained moves; used by the cross-validation corpus.
pub fn random_geometric_system(seed: u64) -> System {
    let mut rng = Rng::seeded(seed);
    let n = 1 + rng.below(3);
    let mut sys = System::standard(&[n]);
    attach_standard_arcs(&mut sys);
    for _ in 0..rng.below(3) {
        let Some((mv, next)) = random_geometric_move(&mut rng, &sys) else { break };
        let _ = mv;
        sys = next;
    }
    sys
}

pub fn attach_standard_arcs(sys: &mut System) {
    for i in 0..sys.discs().len() {
        let d = DiscIx(i);
        let (a, b) = sys.disc(d).corners;
        sys.disc_mut(d).g_arc = Some(crate::arc::Arc::chord(a, b));
        sys.disc_mut(d).r_arc = Some(crate::arc::Arc::chord(a, b));
    }
}

/// One move applied with its arcs maintained: clear-path slides (rerouting
/// and recounting on the slide sphere) and births. Returns the move and the
/// resulting system, or None if no clear slide exists.
pub fn random_geometric_move(rng: &mut Rng, sys: &System) -> Option<(Move, System)> {
    for _ in 0..30 {
        if rng.below(4) == 0 {
            let mv = Move::Birth { eye: 0 };
            if let Ok(next) = moves::apply(sys, &mv) {
                return Some((mv, next));
            }
        }
        let surface = if rng.flip() { Surface::G } else { Surface::R };
        let pairs = same_kind_pairs(sys, Some(surface));
        let Some(&(m, o)) = rng.pick(&pairs) else { continue };
        let mv = Move::Slide {
            surface,
            mover: sys.disc(m).name.clone(),
            over: sys.disc(o).name.clone(),
            twist: rng.below(2) as i64,
            path: Default::default(),
        };
        if let Ok(next) = apply_geometric_slide(sys, &mv) {
            return Some((mv, next));
        }
    }
    None
}

/// Applies a clear-path slide while keeping the geometric layer: the mover's
/// arc is rerouted and the recount must agree with the axiomatic deltas
/// (otherwise the band needs a non-clear path and the candidate is rejected).
pub fn apply_geometric_slide(sys: &System, mv: &Move) -> Result<System> {
    let Move::Slide { surface, mover, over, .. } = mv else {
        return Err(Error::BadMove(String::from("not a slide")));
    };
    let mut out = moves::apply(sys, mv)?;
    let m = sys.disc_by_name(mover)?;
    let o = sys.disc_by_name(over)?;
    let sphere = crate::arc::MarkedSphere { points: sys.point_count(sys.disc(m).pair_key()) };
    let (m_arc, o_arc) = match surface {
        Surface::G => (&sys.disc(m).g_arc, &sys.disc(o).g_arc),
        Surface::R => (&sys.disc(m).r_arc, &sys.disc(o).r_arc),
    };
    let (Some(m_arc), Some(o_arc)) = (m_arc, o_arc) else {
        return Err(Error::BadMove(String::from("geometric layer unavailable")));
    };
    let new_arc = crate::arc::slide_reroute(m_arc, o_arc, &sphere);
    for e in 0..sys.discs().len() {
        if e == m.0 {
            continue;
        }
        let e_arc = match surface {
            Surface::G => sys.disc(DiscIx(e)).g_arc.as_ref(),
            Surface::R => sys.disc(DiscIx(e)).r_arc.as_ref(),
        };
        let Some(e_arc) = e_arc else {
            return Err(Error::BadMove(String::from("geometric layer unavailable")));
        };
        let counted = crate::arc::crossings_on(&new_arc, e_arc, &sphere) as u32;
        if counted != out.x(*surface).get(m.0, e) {
            return Err(Error::BadMove(
                "band path is not clear; slide rejected for the geometric corpus".to_string(),
            ));
        }
    }
    match surface {
        Surface::G => out.disc_mut(m).g_arc = Some(new_arc),
        Surface::R => out.disc_mut(m).r_arc = Some(new_arc),
    }
    Ok(out)
}
