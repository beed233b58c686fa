//! The rewrite engine: every operation performed on finger/Whitney systems,
//! as deterministic transformations with explicit deltas to the interior
//! parity matrix M, the boundary crossing matrices Xg/Xr, germs and class
//! offsets. Replaying a move on the same input is deterministic.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::homology::{clifford_class, shared_corners, Generator, H2Class};
use crate::system::{Disc, DiscIx, Kind, PairKey, System};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Surface {
    G,
    R,
}

impl Surface {
    pub fn opposite(self) -> Surface {
        match self {
            Surface::G => Surface::R,
            Surface::R => Surface::G,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Surface::G => "g",
            Surface::R => "r",
        }
    }
}

/// Band path of a disc slide, described by its crossing counts against the
/// other boundary arcs. `Clear` is the canonical path crossing nothing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathSpec {
    pub crossings: Vec<(String, u32)>,
}

impl PathSpec {
    pub fn clear() -> Self {
        PathSpec::default()
    }

    fn count(&self, name: &str) -> u32 {
        self.crossings
            .iter()
            .filter(|(n, _)| n == name)
            .map(|(_, c)| *c)
            .sum()
    }
}

/// One applied move with all its parameters; move scripts replay exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Slide { surface: Surface, mover: String, over: String, twist: i64, path: PathSpec },
    /// Compound "swing about the sphere": removes one crossing of `mover`
    /// with `target` on `surface` by sliding `mover` over every same-kind
    /// disc of the eye, re-untwisting the resulting boundary bigons.
    Swing { surface: Surface, mover: String, target: String },
    Rotate { disc: String, surface: Surface, corner: usize, sign: i8 },
    CliffordAdd { target: String, source: String, count: u64 },
    SphereSlide { mover: String, over: String },
    Switch { eye: usize, order: Vec<String> },
    Birth { eye: usize },
    Death { eye: usize, f: String, w: String },
    X3 { eye: usize, at: usize },
    X3Remove { eye: usize, f: String, w: String },
    Saddle { eye: usize, x: usize, y: usize },
    Spin { eye: usize, src: String, targets: Vec<String> },
}

/// Record of one k-switching: per processed eye, the opened cycles with their
/// switch-out discs, in splice order (last chunk of the arc first).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SwitchInfo {
    pub eye: usize,
    pub k: usize,
    /// (switch-out disc, full cycle) sorted by ordering rank of the outs.
    pub outs: Vec<(DiscIx, Vec<DiscIx>)>,
}

/// Applies a move, returning the rewritten system.
pub fn apply(sys: &System, mv: &Move) -> Result<System> {
    match mv {
        Move::Slide { surface, mover, over, twist, path } => {
            disc_slide(sys, *surface, mover, over, *twist, path)
        }
        Move::Swing { surface, mover, target } => swing(sys, *surface, mover, target),
        Move::Rotate { disc, surface, corner, sign } => rotate(sys, disc, *surface, *corner, *sign),
        Move::CliffordAdd { target, source, count } => clifford_add(sys, target, source, *count),
        Move::SphereSlide { mover, over } => sphere_slide(sys, mover, over),
        Move::Switch { eye, order } => {
            let ord = resolve_order(sys, *eye, order)?;
            Ok(k_switch(sys, *eye, &ord)?.0)
        }
        Move::Birth { eye } => birth(sys, *eye),
        Move::Death { eye, f, w } => death(sys, *eye, f, w),
        Move::X3 { eye, at } => x3_insert(sys, *eye, *at),
        Move::X3Remove { eye, f, w } => x3_remove(sys, *eye, f, w),
        Move::Saddle { eye, x, y } => saddle(sys, *eye, *x, *y),
        Move::Spin { eye, src, targets } => spin(sys, *eye, src, targets),
    }
}

pub fn apply_script(sys: &System, script: &[Move]) -> Result<System> {
    let mut cur = sys.clone();
    for mv in script {
        cur = apply(&cur, mv)?;
    }
    Ok(cur)
}

fn same_sphere(sys: &System, s: Surface, a: DiscIx, b: DiscIx) -> bool {
    match s {
        Surface::G => sys.disc(a).g_eye == sys.disc(b).g_eye,
        Surface::R => sys.disc(a).r_eye == sys.disc(b).r_eye,
    }
}

/// A move rerouted this disc's boundary arc on `surface`; the attached arc,
/// if any, no longer describes it.
fn invalidate_arc(sys: &mut System, d: DiscIx, surface: Surface) {
    match surface {
        Surface::G => sys.disc_mut(d).g_arc = None,
        Surface::R => sys.disc_mut(d).r_arc = None,
    }
}

/// Band-sums `mover`'s boundary arc on `surface` with a cap parallel to
/// `over`'s arc along `path`, with `twist` full twists about the sphere.
///
/// Crossing delta on the slide surface, for each third disc d: two crossings
/// per crossing of d with `over`'s arc, two per crossing of d with the band
/// path, and one per corner of `over` held by d (the cap rounds the corners).
/// Interior parity delta: M(mover, e) gains the crossing parity of e with
/// `over` on the opposite surface; a twisted slide additionally adds the
/// Clifford class of `over`.
pub fn disc_slide(
    sys: &System,
    surface: Surface,
    mover: &str,
    over: &str,
    twist: i64,
    path: &PathSpec,
) -> Result<System> {
    let m = sys.disc_by_name(mover)?;
    let o = sys.disc_by_name(over)?;
    if m == o {
        return Err(Error::BadMove("cannot slide a disc over itself".into()));
    }
    if sys.disc(m).kind != sys.disc(o).kind {
        return Err(Error::KindMismatch(format!(
            "disc slides pair like with like; {mover} and {over} differ"
        )));
    }
    if !same_sphere(sys, surface, m, o) {
        return Err(Error::BadMove(format!(
            "{mover} and {over} have no common {} sphere",
            match surface {
                Surface::G => "green",
                Surface::R => "red",
            }
        )));
    }
    let mut out = sys.clone();
    let nd = out.discs().len();
    // Interior parities: opposite-kind rows pick up the other surface's
    // boundary crossings with `over`.
    let opp = surface.opposite();
    for e in 0..nd {
        if e == m.0 || sys.disc(DiscIx(e)).kind == sys.disc(m).kind {
            continue;
        }
        let x = sys.x(opp).get(e, o.0);
        out.m_mut().add(m.0, e, x % 2 == 1);
    }
    if twist.rem_euclid(2) == 1 {
        for e in 0..nd {
            if e == m.0 {
                continue;
            }
            out.m_mut().add(m.0, e, shared_corners(sys, o, DiscIx(e)) % 2 == 1);
        }
        let cls = clifford_class(sys, o);
        out.disc_mut(m).offset.add(&cls);
    }
    // Boundary crossings on the slide surface.
    for e in 0..nd {
        if e == m.0 {
            continue;
        }
        let mut gain = 2 * path.count(&sys.disc(DiscIx(e)).name);
        if e != o.0 {
            gain += 2 * sys.x(surface).get(e, o.0);
            gain += shared_corners(sys, o, DiscIx(e)) as u32;
        }
        if gain > 0 {
            out.x_mut(surface).add(m.0, e, gain);
        }
    }
    // The mover's arc on the slide surface changed; invalidate it.
    invalidate_arc(&mut out, m, surface);
    Ok(out)
}

/// Canonical crossing-removing compound: `mover` swings about the sphere,
/// sliding over every other same-kind disc of its sphere, eliminating one
/// crossing with `target` and re-untwisting the boundary bigons created at
/// its corners.
pub fn swing(sys: &System, surface: Surface, mover: &str, target: &str) -> Result<System> {
    let b = sys.disc_by_name(mover)?;
    let a = sys.disc_by_name(target)?;
    if sys.x(surface).get(a.0, b.0) == 0 {
        return Err(Error::BadMove(format!("{mover} and {target} do not cross on {surface:?}")));
    }
    let mut out = sys.clone();
    let opp = surface.opposite();
    let nd = sys.discs().len();
    for e in 0..nd {
        if e == b.0 || sys.disc(DiscIx(e)).kind == sys.disc(b).kind {
            continue;
        }
        let mut acc = false;
        for k in 0..nd {
            if k == b.0 || sys.disc(DiscIx(k)).kind != sys.disc(b).kind {
                continue;
            }
            if !same_sphere(sys, surface, DiscIx(k), b) {
                continue;
            }
            acc ^= sys.x(opp).get(e, k) % 2 == 1;
        }
        out.m_mut().add(b.0, e, acc);
    }
    out.x_mut(surface).sub(a.0, b.0, 1);
    invalidate_arc(&mut out, b, surface);
    Ok(out)
}

/// Rotates (re-untwists) a disc about `surface` at one of its corners.
pub fn rotate(sys: &System, disc: &str, surface: Surface, corner: usize, sign: i8) -> Result<System> {
    let d = sys.disc_by_name(disc)?;
    if !sys.disc(d).has_corner(corner) {
        return Err(Error::BadCorner(format!("{corner} is not a corner of {disc}")));
    }
    let mut out = sys.clone();
    let nd = sys.discs().len();
    for e in 0..nd {
        if e == d.0 || sys.disc(DiscIx(e)).kind == sys.disc(d).kind {
            continue;
        }
        let x = sys.x(surface).get(e, d.0);
        out.m_mut().add(d.0, e, x % 2 == 1);
    }
    // The loop created at the corner crosses the arcs attached there on the
    // opposite surface: exactly the corner partner of opposite kind.
    let key = sys.disc(d).pair_key();
    let (focc, wocc) = sys.occupancy(key);
    let partner = match sys.disc(d).kind {
        Kind::Finger => wocc[corner],
        Kind::Whitney => focc[corner],
    };
    if let Some(p) = partner {
        let opp = surface.opposite();
        if sign >= 0 {
            out.x_mut(opp).add(d.0, p.0, 1);
        } else {
            if sys.x(opp).get(d.0, p.0) == 0 {
                return Err(Error::BadMove(format!(
                    "negative rotation of {disc} at {corner} has no crossing to remove"
                )));
            }
            out.x_mut(opp).sub(d.0, p.0, 1);
        }
        invalidate_arc(&mut out, d, opp);
    }
    let g = &mut out.disc_mut(d).germ;
    match surface {
        Surface::R => g.0 += 2 * sign as i64,
        Surface::G => g.1 += 2 * sign as i64,
    }
    Ok(out)
}

/// Cut-and-paste with `count` copies of the Clifford torus pair at `source`'s
/// corners.
pub fn clifford_add(sys: &System, target: &str, source: &str, count: u64) -> Result<System> {
    let t = sys.disc_by_name(target)?;
    let s = sys.disc_by_name(source)?;
    if sys.disc(t).kind != sys.disc(s).kind {
        return Err(Error::KindMismatch(format!(
            "Clifford additions pair like with like; {target} and {source} differ"
        )));
    }
    let mut out = sys.clone();
    if count % 2 == 1 {
        let nd = sys.discs().len();
        for e in 0..nd {
            if e == t.0 {
                continue;
            }
            out.m_mut().add(t.0, e, shared_corners(sys, s, DiscIx(e)) % 2 == 1);
        }
        let cls = clifford_class(sys, s);
        out.disc_mut(t).offset.add(&cls);
    }
    Ok(out)
}

/// Tubes `mover` into the finger (resp. Whitney) sphere of `over`. The
/// sphere meets the opposite-kind discs once per corner shared with `over`,
/// so on an immersed arc this is the delta_{i,l} + delta_{i-1,l} rule.
pub fn sphere_slide(sys: &System, mover: &str, over: &str) -> Result<System> {
    let m = sys.disc_by_name(mover)?;
    let o = sys.disc_by_name(over)?;
    if m == o {
        return Err(Error::BadMove("cannot sphere-slide a disc over itself".into()));
    }
    if sys.disc(m).kind != sys.disc(o).kind {
        return Err(Error::KindMismatch(format!(
            "sphere slides pair like with like; {mover} and {over} differ"
        )));
    }
    let mut out = sys.clone();
    let nd = sys.discs().len();
    for e in 0..nd {
        if e == m.0 || sys.disc(DiscIx(e)).kind == sys.disc(m).kind {
            continue;
        }
        out.m_mut().add(m.0, e, shared_corners(sys, o, DiscIx(e)) % 2 == 1);
    }
    out.disc_mut(m)
        .offset
        .toggle(Generator::MoveSphere(sys.disc(o).name.clone()));
    Ok(out)
}

/// Default Whitney ordering of an eye: by negative (odd) corner index.
pub fn default_w_order(sys: &System, eye: usize) -> Vec<DiscIx> {
    let mut ws: Vec<DiscIx> = sys
        .eye_discs(eye)
        .into_iter()
        .filter(|&d| sys.disc(d).kind == Kind::Whitney)
        .collect();
    ws.sort_by_key(|&d| sys.disc(d).neg_corner());
    ws
}

/// Resolves a named ordering (possibly empty, meaning the declared or the
/// default one) into disc indices covering the eye's Whitney family.
pub fn resolve_order(sys: &System, eye: usize, names: &[String]) -> Result<Vec<DiscIx>> {
    if names.is_empty() {
        if let Some(declared) = sys.w_order().get(&eye) {
            if !declared.is_empty() {
                let declared = declared.clone();
                return resolve_order(sys, eye, &declared);
            }
        }
        return Ok(default_w_order(sys, eye));
    }
    let mut out = Vec::with_capacity(names.len());
    for n in names {
        let d = sys.disc_by_name(n)?;
        if sys.disc(d).kind != Kind::Whitney || sys.disc(d).r_eye != eye || sys.disc(d).is_cross() {
            return Err(Error::BadMove(format!("{n} is not a Whitney disc of eye {}", eye + 1)));
        }
        out.push(d);
    }
    let mut all = default_w_order(sys, eye);
    all.sort();
    let mut given = out.clone();
    given.sort();
    if all != given {
        return Err(Error::BadMove(format!(
            "ordering must list every Whitney disc of eye {} exactly once",
            eye + 1
        )));
    }
    Ok(out)
}

/// Order-induced minimal switching of one eye: per cycle the minimal Whitney
/// disc under the ordering switches out; opened cycles splice into the arc in
/// descending switch-out rank, each switch disc keeping the negative corner
/// of its switched-out disc and re-pairing the other end to the start of the
/// following chunk.
///
/// Switch discs keep the interior parity column of the disc they replace
/// (their interiors represent the same relative class against the dual
/// spheres), and carry no boundary crossings, twisting or offset.
pub fn k_switch(sys: &System, eye: usize, order: &[DiscIx]) -> Result<(System, SwitchInfo)> {
    sys.eye(eye)?;
    let comps = sys.components(eye)?;
    if comps.cycles.is_empty() {
        return Ok((sys.clone(), SwitchInfo { eye, k: 0, outs: Vec::new() }));
    }
    let rank = rank_map(order);
    let mut outs: Vec<DiscIx> = Vec::new();
    for cyc in &comps.cycles {
        let s = cyc
            .iter()
            .copied()
            .filter(|&d| sys.disc(d).kind == Kind::Whitney)
            .min_by_key(|d| rank.get(d).copied().unwrap_or(usize::MAX))
            .ok_or_else(|| Error::Invalid(format!("cycle in eye {eye} has no Whitney disc")))?;
        outs.push(s);
    }
    switch_core(sys, eye, &outs, order)
}

/// Switching with an explicitly chosen switch-out set; every cycle must hold
/// at least one out, and arc discs may switch out too, as in the standard
/// full switches.
pub fn forced_switch(
    sys: &System,
    eye: usize,
    outs: &[DiscIx],
    order: &[DiscIx],
) -> Result<(System, SwitchInfo)> {
    switch_core(sys, eye, outs, order)
}

fn rank_map(order: &[DiscIx]) -> BTreeMap<DiscIx, usize> {
    let mut rank = BTreeMap::new();
    for (i, &d) in order.iter().enumerate() {
        rank.insert(d, i);
    }
    rank
}

fn switch_core(
    sys: &System,
    eye: usize,
    outs: &[DiscIx],
    order: &[DiscIx],
) -> Result<(System, SwitchInfo)> {
    let comps = sys.components(eye)?;
    for d in outs {
        if sys.disc(*d).kind != Kind::Whitney || sys.disc(*d).pair_key() != PairKey(eye, eye) {
            return Err(Error::BadMove(format!(
                "switch-out {} is not a Whitney disc of eye {}",
                sys.disc(*d).name,
                eye + 1
            )));
        }
    }
    for cyc in &comps.cycles {
        if !cyc.iter().any(|d| outs.contains(d)) {
            return Err(Error::BadMove(format!(
                "a cycle of eye {} keeps all its Whitney discs; the switch cannot reach the immersed arc condition",
                eye + 1
            )));
        }
    }
    // Break every component at the outs. Each fragment runs from a positive
    // corner (or the Whitney-missed point) to the negative corner of the out
    // it feeds, or to the finger-missed point for the tail fragment.
    let key = PairKey(eye, eye);
    let (focc, wocc) = sys.occupancy(key);
    let walk = |start: usize| -> Result<(Vec<DiscIx>, usize)> {
        let mut edges = Vec::new();
        let mut p = start;
        loop {
            let Some(f) = focc[p] else {
                return Ok((edges, p)); // finger-missed point: the tail ends
            };
            edges.push(f);
            p = sys.disc(f).other_corner(p);
            let Some(w) = wocc[p] else {
                return Err(Error::Invalid(format!("eye {} pairing breaks at point {p}", eye + 1)));
            };
            if outs.contains(&w) {
                return Ok((edges, p));
            }
            edges.push(w);
            p = sys.disc(w).other_corner(p);
        }
    };
    // Fragment owned by each out (ending at its negative corner) and the tail.
    let mut frag_start: BTreeMap<DiscIx, usize> = BTreeMap::new();
    let mut tail_start: Option<usize> = None;
    let mut starts: Vec<usize> = Vec::with_capacity(outs.len() + 1);
    starts.push(comps.path_start);
    for &s in outs {
        starts.push(sys.disc(s).pos_corner());
    }
    for start in starts {
        let (_, end) = walk(start)?;
        match wocc[end].filter(|w| outs.contains(w)) {
            Some(owner) if end == sys.disc(owner).neg_corner() => {
                frag_start.insert(owner, start);
            }
            _ => {
                if end != comps.path_end {
                    return Err(Error::Invalid(format!(
                        "eye {} fragment ends at unexpected point {end}",
                        eye + 1
                    )));
                }
                tail_start = Some(start);
            }
        }
    }
    let tail_start = tail_start.ok_or_else(|| {
        Error::Invalid(format!("eye {} has no tail fragment after switching", eye + 1))
    })?;
    let rank = rank_map(order);
    let mut sorted: Vec<DiscIx> = outs.to_vec();
    sorted.sort_by_key(|d| rank.get(d).copied().unwrap_or(usize::MAX));
    // Re-pair: switch disc j keeps its out's negative corner and reaches the
    // start of the next chunk (the next-lower fragment, or the tail).
    let mut out_sys = sys.clone();
    for (j, &s) in sorted.iter().enumerate() {
        let neg = sys.disc(s).neg_corner();
        let tgt = if j == 0 {
            tail_start
        } else {
            *frag_start.get(&sorted[j - 1]).ok_or_else(|| {
                Error::Invalid(format!(
                    "switch-out {} owns no fragment",
                    sys.disc(sorted[j - 1]).name
                ))
            })?
        };
        let d = out_sys.disc_mut(s);
        d.corners = (neg.min(tgt), neg.max(tgt));
        d.germ = (0, 0);
        d.offset = H2Class::zero();
        d.g_arc = None;
        d.r_arc = None;
        out_sys.xg_mut().zero_row(s.0);
        out_sys.xr_mut().zero_row(s.0);
    }
    let info = SwitchInfo {
        eye,
        k: sorted.len(),
        outs: sorted
            .iter()
            .map(|&s| {
                let cyc = comps
                    .cycles
                    .iter()
                    .find(|c| c.contains(&s))
                    .cloned()
                    .unwrap_or_default();
                (s, cyc)
            })
            .collect(),
    };
    debug_assert!(out_sys.components(eye).map(|c| c.cycles.is_empty()).unwrap_or(false));
    Ok((out_sys, info))
}

/// Appends a cancelling finger/Whitney pair at two fresh marked points.
pub fn birth(sys: &System, eye: usize) -> Result<System> {
    sys.eye(eye)?;
    let mut out = sys.clone();
    let (neg, pos) = out.append_point_pair(PairKey(eye, eye));
    let with_arcs = sys.has_arcs() && sys.eyes().len() == 1;
    let mk_arc = || {
        if with_arcs {
            Some(crate::arc::Arc::chord(neg, pos))
        } else {
            None
        }
    };
    for kind in [Kind::Finger, Kind::Whitney] {
        let name = out.fresh_name(kind);
        out.push_disc(Disc {
            name,
            kind,
            r_eye: eye,
            g_eye: eye,
            corners: (neg.min(pos), neg.max(pos)),
            germ: (0, 0),
            offset: H2Class::zero(),
            g_arc: mk_arc(),
            r_arc: mk_arc(),
        });
    }
    Ok(out)
}

/// Removes a cancelling pair created by a birth (or an equivalent one): the
/// two discs must pair the same two adjacent marked points, agree in all
/// crossing rows and offsets, and have vanishing mutual parity.
pub fn death(sys: &System, eye: usize, f: &str, w: &str) -> Result<System> {
    let fi = sys.disc_by_name(f)?;
    let wi = sys.disc_by_name(w)?;
    let (df, dw) = (sys.disc(fi), sys.disc(wi));
    if df.kind != Kind::Finger || dw.kind != Kind::Whitney {
        return Err(Error::KindMismatch(format!("death wants a finger and a Whitney disc, got {f}, {w}")));
    }
    if df.r_eye != eye || df.is_cross() || dw.r_eye != eye || dw.is_cross() {
        return Err(Error::BadMove(format!("{f}, {w} are not uncross discs of eye {}", eye + 1)));
    }
    if df.corners != dw.corners {
        return Err(Error::BadMove(format!("death pair must share both corners; {f} has {:?}, {w} has {:?}", df.corners, dw.corners)));
    }
    if df.germ != dw.germ {
        return Err(Error::BadMove(format!("death pair must agree as framed discs; germs {:?} vs {:?}", df.germ, dw.germ)));
    }
    if df.offset != dw.offset {
        return Err(Error::BadMove(format!("death pair must have equal class offsets")));
    }
    if sys.m().get(fi.0, wi.0) {
        return Err(Error::BadMove(format!("death pair must have M({f},{w}) = 0")));
    }
    for e in 0..sys.discs().len() {
        if e == fi.0 || e == wi.0 {
            continue;
        }
        if sys.xg().get(fi.0, e) != sys.xg().get(wi.0, e)
            || sys.xr().get(fi.0, e) != sys.xr().get(wi.0, e)
        {
            return Err(Error::BadMove(format!(
                "death pair must have identical arcs; crossings with {} differ",
                sys.disc(DiscIx(e)).name
            )));
        }
    }
    let (lo, hi) = df.corners;
    if lo % 2 != 1 || hi != lo + 1 {
        return Err(Error::BadMove(format!(
            "death pair must sit at an adjacent (odd, even) point pair, got {:?}",
            df.corners
        )));
    }
    let mut out = sys.clone();
    let arcs_safe = arcs_survive_removal(&out, eye, lo);
    if !arcs_safe {
        out.drop_arcs();
    }
    out.remove_discs(&[fi, wi]);
    out.remove_point_pair(PairKey(eye, eye), lo)?;
    Ok(out)
}

fn arcs_survive_removal(sys: &System, eye: usize, p: usize) -> bool {
    if !sys.has_arcs() {
        return true;
    }
    // Removing the trailing point pair merges the last gaps; arcs survive if
    // nothing crosses the affected gaps and the pair is at the very end.
    let count = sys.point_count(PairKey(eye, eye));
    if p + 2 != count {
        return false;
    }
    let danger = count.saturating_sub(3);
    sys.discs().iter().all(|d| {
        [&d.g_arc, &d.r_arc].into_iter().all(|a| match a {
            Some(arc) => arc.word().iter().all(|&g| g < danger),
            None => true,
        })
    })
}

/// Occupants of a marked point: (finger, Whitney).
fn occupants(sys: &System, key: PairKey, p: usize) -> (Option<DiscIx>, Option<DiscIx>) {
    let (f, w) = sys.occupancy(key);
    (f[p], w[p])
}

/// Cusp insertion at a marked point of the eye. Two fresh points u, v are
/// created; the new cancelling pair extends the immersed arc through the
/// target point, and an occupant of the target of the same kind as the disc
/// that takes its place relocates to v along a parallel copy of the new disc
/// (which carries no data at insertion, so the reroute is free).
pub fn x3_insert(sys: &System, eye: usize, at: usize) -> Result<System> {
    sys.eye(eye)?;
    let key = PairKey(eye, eye);
    if at >= sys.point_count(key) {
        return Err(Error::BadMove(format!("x3 target point {at} out of range")));
    }
    let (f_at, w_at) = occupants(sys, key, at);
    let mut out = sys.clone();
    if out.has_arcs() {
        out.drop_arcs();
    }
    let (odd, even) = out.append_point_pair(key);
    // u takes the sign opposite the target, v the same sign.
    let (u, v) = if at % 2 == 0 { (odd, even) } else { (even, odd) };
    let mk = |out: &mut System, kind: Kind, a: usize, b: usize| {
        let name = out.fresh_name(kind);
        out.push_disc(Disc {
            name,
            kind,
            r_eye: eye,
            g_eye: eye,
            corners: (a.min(b), a.max(b)),
            germ: (0, 0),
            offset: H2Class::zero(),
            g_arc: None,
            r_arc: None,
        })
    };
    match (f_at, w_at) {
        (Some(fc), _) => {
            // A finger occupies the target: the new finger takes its corner,
            // the occupant relocates to v via a parallel of the new finger.
            mk(&mut out, Kind::Finger, at, u);
            mk(&mut out, Kind::Whitney, u, v);
            let c = out.disc(fc).other_corner(at);
            out.disc_mut(fc).corners = (c.min(v), c.max(v));
        }
        (None, Some(wc)) => {
            mk(&mut out, Kind::Whitney, at, u);
            mk(&mut out, Kind::Finger, u, v);
            let c = out.disc(wc).other_corner(at);
            out.disc_mut(wc).corners = (c.min(v), c.max(v));
        }
        (None, None) => {
            mk(&mut out, Kind::Finger, at, u);
            mk(&mut out, Kind::Whitney, u, v);
        }
    }
    Ok(out)
}

/// Inverse cusp: removes a locally trivial pair inserted by `x3_insert`,
/// relocating the disc parked at the pair's outer point back to the target.
pub fn x3_remove(sys: &System, eye: usize, f: &str, w: &str) -> Result<System> {
    let fi = sys.disc_by_name(f)?;
    let wi = sys.disc_by_name(w)?;
    let key = PairKey(eye, eye);
    let (df, dw) = (sys.disc(fi), sys.disc(wi));
    if df.kind != Kind::Finger || dw.kind != Kind::Whitney {
        return Err(Error::KindMismatch("x3- wants a finger and a Whitney disc".into()));
    }
    if df.pair_key() != key || dw.pair_key() != key {
        return Err(Error::BadMove(format!("{f}, {w} are not uncross discs of eye {}", eye + 1)));
    }
    for d in [fi, wi] {
        if sys.disc(d).germ != (0, 0) || !sys.disc(d).offset.is_zero() {
            return Err(Error::BadMove(format!("{} is not locally trivial", sys.disc(d).name)));
        }
        for e in 0..sys.discs().len() {
            if e == fi.0 || e == wi.0 {
                continue;
            }
            if sys.xg().get(d.0, e) != 0 || sys.xr().get(d.0, e) != 0 || sys.m().get(d.0, e) {
                return Err(Error::BadMove(format!(
                    "{} still carries crossings or intersections",
                    sys.disc(d).name
                )));
            }
        }
    }
    if sys.m().get(fi.0, wi.0) || sys.xg().get(fi.0, wi.0) != 0 || sys.xr().get(fi.0, wi.0) != 0 {
        return Err(Error::BadMove("x3- pair must be mutually clean".into()));
    }
    // Shape: the pair shares the inner point u of the appended pair (u, v);
    // the outer corner of one disc is v, the other disc's outer corner is
    // the original target point.
    let shared: Vec<usize> = [df.corners.0, df.corners.1]
        .into_iter()
        .filter(|&c| dw.has_corner(c))
        .collect();
    if shared.len() != 1 {
        return Err(Error::BadMove("x3- pair must share exactly one corner".into()));
    }
    let u = shared[0];
    let fo = df.other_corner(u);
    let wo = dw.other_corner(u);
    let (odd, even) = if u % 2 == 1 { (u, u + 1) } else { (u.wrapping_sub(1), u) };
    if u % 2 == 0 && u == 0 {
        return Err(Error::BadMove("x3- pair does not bound an inserted cusp".into()));
    }
    // Finger variant: f = (target, u), w = (u, v); Whitney variant mirrors.
    let (v, target, relocated_kind) = if wo == odd || wo == even {
        (wo, fo, Kind::Finger)
    } else if fo == odd || fo == even {
        (fo, wo, Kind::Whitney)
    } else {
        return Err(Error::BadMove("x3- pair does not bound an inserted cusp".into()));
    };
    let mut out = sys.clone();
    if out.has_arcs() {
        out.drop_arcs();
    }
    // The occupant parked at v during insertion returns to the freed target.
    let (f_at_v, w_at_v) = occupants(&out, key, v);
    let parked = match relocated_kind {
        Kind::Finger => f_at_v.filter(|&d| d != fi),
        Kind::Whitney => w_at_v.filter(|&d| d != wi),
    };
    if let Some(p) = parked {
        let c = out.disc(p).other_corner(v);
        out.disc_mut(p).corners = (c.min(target), c.max(target));
    }
    out.remove_discs(&[fi, wi]);
    out.remove_point_pair(key, odd)?;
    Ok(out)
}

/// Saddle move with a clean saddle disc pairing the marked points x (+) and
/// y (-): a fresh cancelling pair appears at two new points, and the corner
/// occupants of x and y pick up parallel copies of the new discs (free of
/// data at creation).
pub fn saddle(sys: &System, eye: usize, x: usize, y: usize) -> Result<System> {
    sys.eye(eye)?;
    let key = PairKey(eye, eye);
    let count = sys.point_count(key);
    if x >= count || y >= count || x == y {
        return Err(Error::BadMove(format!("saddle corners {x},{y} out of range")));
    }
    if !System::sign_positive(x) || System::sign_positive(y) {
        return Err(Error::BadMove(format!(
            "saddle pairs a positive with a negative point; got {x} (+ wanted), {y} (- wanted)"
        )));
    }
    let out = birth(sys, eye)?;
    // Parallel-copy deltas at the occupied corners of x and y: copies of the
    // newly created pair, which carries no intersections at creation, so the
    // occupants' rows are unchanged. Evaluated for fidelity; nothing to add.
    let _ = occupants(sys, key, x);
    let _ = occupants(sys, key, y);
    Ok(out)
}

/// Spinning one solid finger about another: the targets gain the linking
/// sphere class of `src`'s finger, meeting each finger disc with a corner at
/// `src`'s negative point once.
pub fn spin(sys: &System, eye: usize, src: &str, targets: &[String]) -> Result<System> {
    let s = sys.disc_by_name(src)?;
    if sys.disc(s).kind != Kind::Whitney || sys.disc(s).pair_key() != PairKey(eye, eye) {
        return Err(Error::BadMove(format!("spin source {src} must be a Whitney disc of eye {}", eye + 1)));
    }
    let neg = sys.disc(s).neg_corner();
    let mut out = sys.clone();
    for tname in targets {
        let t = sys.disc_by_name(tname)?;
        if t == s {
            return Err(Error::BadMove("spin target must differ from the source".into()));
        }
        if sys.disc(t).kind != Kind::Whitney {
            return Err(Error::KindMismatch(format!("spin targets are Whitney discs; {tname} is not")));
        }
        for e in 0..sys.discs().len() {
            let de = sys.disc(DiscIx(e));
            if de.kind != Kind::Finger || de.pair_key() != PairKey(eye, eye) {
                continue;
            }
            if de.has_corner(neg) {
                out.m_mut().flip(t.0, e);
            }
        }
        out.disc_mut(t).offset.toggle(Generator::Linking(sys.disc(s).name.clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::Position;
    use crate::text;

    fn standard(n: usize) -> System {
        System::standard(&[n])
    }

    fn ix(sys: &System, name: &str) -> DiscIx {
        sys.disc_by_name(name).unwrap()
    }

    #[test]
    fn untwisted_slide_with_clear_red_side_keeps_m() {
        // G-slide w1 over w2 with all Xr(.,w2) = 0: M unchanged mod 2.
        let sys = standard(3);
        let out = disc_slide(&sys, Surface::G, "w1", "w2", 0, &PathSpec::clear()).unwrap();
        for i in 0..sys.discs().len() {
            for j in 0..sys.discs().len() {
                assert_eq!(sys.m().get(i, j), out.m().get(i, j));
            }
        }
        // The cap rounds w2's corners: one new crossing with each of f2, f3.
        assert_eq!(out.xg().get(ix(&sys, "w1").0, ix(&sys, "f2").0), 1);
        assert_eq!(out.xg().get(ix(&sys, "w1").0, ix(&sys, "f3").0), 1);
    }

    #[test]
    fn once_twisted_slide_adds_the_clifford_deltas() {
        // Relative to the untwisted slide, a 1-twisted G-slide of w1 over w2
        // flips M(f2,w1) and M(f3,w1).
        let sys = standard(3);
        let plain = disc_slide(&sys, Surface::G, "w1", "w2", 0, &PathSpec::clear()).unwrap();
        let twisted = disc_slide(&sys, Surface::G, "w1", "w2", 1, &PathSpec::clear()).unwrap();
        let w1 = ix(&sys, "w1");
        for name in ["f1", "f2", "f3"] {
            let f = ix(&sys, name);
            let flip = plain.m().get(w1.0, f.0) != twisted.m().get(w1.0, f.0);
            assert_eq!(flip, name == "f2" || name == "f3", "{name}");
        }
    }

    #[test]
    fn cross_disc_slides_leave_eye_entries_alone() {
        let mut sys = System::standard(&[1, 1]);
        let key = PairKey(0, 1);
        let (neg, pos) = sys.append_point_pair(key);
        let (neg2, pos2) = {
            let p = sys.append_point_pair(key);
            (p.0, p.1)
        };
        for (a, b, n) in [(neg, pos, "c1"), (neg2, pos2, "c2")] {
            for kind in [Kind::Finger, Kind::Whitney] {
                let name = alloc::format!(
                    "{}{n}",
                    match kind {
                        Kind::Finger => "cf",
                        Kind::Whitney => "cw",
                    }
                );
                sys.push_disc(crate::system::Disc {
                    name,
                    kind,
                    r_eye: 0,
                    g_eye: 1,
                    corners: (a.min(b), a.max(b)),
                    germ: (0, 0),
                    offset: crate::homology::H2Class::zero(),
                    g_arc: None,
                    r_arc: None,
                });
            }
        }
        assert!(sys.validate().is_empty());
        let before = sys.clone();
        let out = disc_slide(&sys, Surface::G, "cfc1", "cfc2", 0, &PathSpec::clear()).unwrap();
        // No same-eye interior entry moved.
        for eye in 0..2 {
            for &a in &sys.eye_discs(eye) {
                for &b in &sys.eye_discs(eye) {
                    assert_eq!(before.m().get(a.0, b.0), out.m().get(a.0, b.0));
                }
            }
        }
    }

    #[test]
    fn rotation_pair_is_an_identity_and_flips_m_by_crossings() {
        let mut sys = standard(2);
        let (w1, f2) = (ix(&sys, "w1"), ix(&sys, "f2"));
        sys.xg_mut().set(w1.0, f2.0, 1);
        // Rotating w1 about G flips M(w1, f2) per the crossing row.
        let out = rotate(&sys, "w1", Surface::G, 1, 1).unwrap();
        assert!(out.m().get(w1.0, f2.0));
        // The loop at corner 1 crosses the corner partner f1 on R.
        let f1 = ix(&sys, "f1");
        assert_eq!(out.xr().get(w1.0, f1.0), 1);
        let back = rotate(&out, "w1", Surface::G, 1, -1).unwrap();
        assert_eq!(back.m(), sys.m());
        assert_eq!(back.xg(), sys.xg());
        assert_eq!(back.xr(), sys.xr());
    }

    #[test]
    fn clifford_add_examples() {
        // Even counts are the identity on M.
        let sys = standard(3);
        let out = clifford_add(&sys, "w1", "w2", 2).unwrap();
        assert_eq!(out.m(), sys.m());
        // C_{w2} into w1 flips M(f2, w1) and M(f3, w1).
        let out = clifford_add(&sys, "w1", "w2", 1).unwrap();
        let w1 = ix(&sys, "w1");
        assert!(out.m().get(w1.0, ix(&sys, "f2").0));
        assert!(out.m().get(w1.0, ix(&sys, "f3").0));
        assert!(!out.m().get(w1.0, ix(&sys, "f1").0));
        // C_{f1} into f1 flips M(f1, w1): f1 and w1 share one corner.
        let out = clifford_add(&sys, "f1", "f1", 1).unwrap();
        assert!(out.m().get(ix(&sys, "f1").0, ix(&sys, "w1").0));
    }

    #[test]
    fn sphere_slide_adjacency_deltas() {
        let sys = standard(3);
        // f2 over f1: only w1 flanks f1 (a0 is the arc's start).
        let out = sphere_slide(&sys, "f2", "f1").unwrap();
        let f2 = ix(&sys, "f2");
        assert!(out.m().get(f2.0, ix(&sys, "w1").0));
        assert!(!out.m().get(f2.0, ix(&sys, "w2").0));
        // f3 over f2: w1 and w2 flank f2.
        let out = sphere_slide(&sys, "f3", "f2").unwrap();
        let f3 = ix(&sys, "f3");
        assert!(out.m().get(f3.0, ix(&sys, "w1").0));
        assert!(out.m().get(f3.0, ix(&sys, "w2").0));
        assert!(!out.m().get(f3.0, ix(&sys, "w3").0));
    }

    #[test]
    fn birth_then_death_is_the_identity() {
        let sys = text::key_example();
        let born = birth(&sys, 0).unwrap();
        assert!(born.validate().is_empty());
        let dead = death(&born, 0, "f2", "w2").unwrap();
        assert_eq!(text::serialize(&dead), text::serialize(&sys));
    }

    #[test]
    fn death_rejects_entangled_pairs() {
        let sys = text::key_example();
        let born = birth(&sys, 0).unwrap();
        let spun = spin(&born, 0, "w1", &["w2".into()]).unwrap();
        let err = death(&spun, 0, "f2", "w2").unwrap_err();
        assert!(matches!(err, Error::BadMove(_)));
    }

    #[test]
    fn post_birth_switch_puts_the_new_pair_first() {
        let sys = standard(1);
        let born = birth(&sys, 0).unwrap();
        let order = resolve_order(&born, 0, &[]).unwrap();
        let (switched, info) = k_switch(&born, 0, &order).unwrap();
        assert_eq!(info.k, 1);
        let ia = switched.ia_order(0).unwrap();
        let names: alloc::vec::Vec<&str> =
            ia.iter().map(|&d| switched.disc(d).name.as_str()).collect();
        assert_eq!(names, ["f2", "w2", "f1", "w1"]);
        assert_eq!(switched.classify(0).unwrap(), Position::Ea);
    }

    #[test]
    fn standard_full_switch_reverses_the_order() {
        // The standard n-switch of the standard system pairs w*_i with
        // (a_{2i-1}, a_{2i-4}) and realizes f_n < w*_n < ... < f_1 < w*_1.
        let sys = standard(3);
        let order = resolve_order(&sys, 0, &[]).unwrap();
        let outs: alloc::vec::Vec<DiscIx> = order.clone();
        let (switched, info) = forced_switch(&sys, 0, &outs, &order).unwrap();
        assert_eq!(info.k, 3);
        let ia = switched.ia_order(0).unwrap();
        let names: alloc::vec::Vec<&str> =
            ia.iter().map(|&d| switched.disc(d).name.as_str()).collect();
        assert_eq!(names, ["f3", "w3", "f2", "w2", "f1", "w1"]);
        assert_eq!(switched.disc(ix(&switched, "w3")).corners, (2, 5));
        assert_eq!(switched.disc(ix(&switched, "w2")).corners, (0, 3));
        assert_eq!(switched.disc(ix(&switched, "w1")).corners, (1, 6));
    }

    #[test]
    fn x3_insert_then_remove_is_the_identity() {
        let sys = standard(2);
        for at in 0..5 {
            let ins = x3_insert(&sys, 0, at).unwrap();
            assert!(ins.validate().is_empty(), "insert at {at}");
            assert_eq!(ins.classify(0).unwrap(), Position::Ea, "x3 preserves EA at {at}");
            let back = x3_remove(&ins, 0, "f3", "w3").unwrap();
            assert_eq!(text::serialize(&back), text::serialize(&sys), "at {at}");
        }
    }

    #[test]
    fn x3_on_a_cycle_point_grows_the_cycle() {
        let sys = standard(1);
        let born = birth(&sys, 0).unwrap();
        // Points 3, 4 hold the 2-cycle pair f2 = w2.
        let grown = x3_insert(&born, 0, 3).unwrap();
        assert!(grown.validate().is_empty());
        let comps = grown.components(0).unwrap();
        assert_eq!(comps.cycles.len(), 1);
        assert_eq!(comps.cycles[0].len(), 4);
    }

    #[test]
    fn saddle_adds_a_clean_two_cycle() {
        let sys = standard(2);
        let out = saddle(&sys, 0, 2, 3).unwrap();
        assert!(out.validate().is_empty());
        let comps = out.components(0).unwrap();
        assert_eq!(comps.cycles.len(), 1);
        assert_eq!(comps.cycles[0].len(), 2);
    }

    #[test]
    fn spin_flips_the_source_corner_finger_row() {
        let sys = standard(2);
        // z(w1) meets exactly the finger at a1 = f1.
        let out = spin(&sys, 0, "w1", &["w2".into()]).unwrap();
        let w2 = ix(&sys, "w2");
        assert!(out.m().get(w2.0, ix(&sys, "f1").0));
        assert!(!out.m().get(w2.0, ix(&sys, "f2").0));
        // Twice is the identity.
        let back = spin(&out, 0, "w1", &["w2".into()]).unwrap();
        assert_eq!(back.m(), sys.m());
    }
}
