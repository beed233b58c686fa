//! The central data model: multi-eye finger/Whitney systems, validation,
//! position classification, cycle decomposition and IA orderings.
//!
//! Marked points live on per-pair lists: eye i owns the list for R_i ∩ G_i
//! (2n+1 points, sign + at even indices, the unpaired a_0 at index 0 in
//! standard form); each cross pair (i, j), i ≠ j, owns its own even-length
//! list. A disc cancels two points of one list, one of each sign.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::arc::Arc;
use crate::homology::H2Class;
use crate::matrix::{SymBits, SymCounts};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiscIx(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Finger,
    Whitney,
}

impl Kind {
    pub fn opposite(self) -> Kind {
        match self {
            Kind::Finger => Kind::Whitney,
            Kind::Whitney => Kind::Finger,
        }
    }
}

/// Key of a marked-point list: (red eye, green eye). Equal components mean an
/// eye's own list; distinct components a cross list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairKey(pub usize, pub usize);

impl PairKey {
    pub fn is_cross(self) -> bool {
        self.0 != self.1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eye {
    pub n: usize,
}

impl Eye {
    pub fn point_count(&self) -> usize {
        2 * self.n + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disc {
    pub name: String,
    pub kind: Kind,
    pub r_eye: usize,
    pub g_eye: usize,
    /// The two marked points cancelled, ascending index order.
    pub corners: (usize, usize),
    /// Germ twisting (p, q) relative to the reference disc; p + q is even.
    pub germ: (i64, i64),
    pub offset: H2Class,
    pub g_arc: Option<Arc>,
    pub r_arc: Option<Arc>,
}

impl Disc {
    pub fn pair_key(&self) -> PairKey {
        PairKey(self.r_eye, self.g_eye)
    }

    pub fn is_cross(&self) -> bool {
        self.r_eye != self.g_eye
    }

    /// Eye classification used when pairing same-kind discs.
    pub fn eye_class(&self) -> PairKey {
        self.pair_key()
    }

    pub fn pos_corner(&self) -> usize {
        if self.corners.0 % 2 == 0 {
            self.corners.0
        } else {
            self.corners.1
        }
    }

    pub fn neg_corner(&self) -> usize {
        if self.corners.0 % 2 == 1 {
            self.corners.0
        } else {
            self.corners.1
        }
    }

    pub fn has_corner(&self, p: usize) -> bool {
        self.corners.0 == p || self.corners.1 == p
    }

    pub fn other_corner(&self, p: usize) -> usize {
        if self.corners.0 == p {
            self.corners.1
        } else {
            self.corners.0
        }
    }
}

/// Per-eye position classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    Ea,
    GEa,
    REa,
    Ia,
    General,
}

impl Position {
    pub fn label(self) -> &'static str {
        match self {
            Position::Ea => "EA",
            Position::GEa => "G-EA",
            Position::REa => "R-EA",
            Position::Ia => "IA",
            Position::General => "FingerFirstGeneral",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub invariant: &'static str,
    pub detail: String,
}

/// Cycle decomposition of one eye's pairing multigraph: a single path through
/// the unpaired points (possibly a point) plus immersed cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Path edges in order from the Whitney-missed point; empty for a point.
    pub path: Vec<DiscIx>,
    /// Start point of the path (the point not covered by Whitney discs).
    pub path_start: usize,
    /// End point of the path (the point not covered by finger discs).
    pub path_end: usize,
    /// Cycles, each listed from its minimal disc toward that disc's positive
    /// corner; sorted by minimal disc index.
    pub cycles: Vec<Vec<DiscIx>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct System {
    eyes: Vec<Eye>,
    cross_points: BTreeMap<(usize, usize), usize>,
    discs: Vec<Disc>,
    m: SymBits,
    xg: SymCounts,
    xr: SymCounts,
    /// Declared Whitney ordering per eye (disc names), when any.
    w_order: BTreeMap<usize, Vec<String>>,
}

impl System {
    pub fn new(eye_sizes: &[usize]) -> System {
        System {
            eyes: eye_sizes.iter().map(|&n| Eye { n }).collect(),
            cross_points: BTreeMap::new(),
            discs: Vec::new(),
            m: SymBits::new(0),
            xg: SymCounts::new(0),
            xr: SymCounts::new(0),
            w_order: BTreeMap::new(),
        }
    }

    /// Standard system: every eye in framed finger form with f_i = (a_{2i-2},
    /// a_{2i-1}), w_i = (a_{2i-1}, a_{2i}), zero matrices and germs.
    pub fn standard(eye_sizes: &[usize]) -> System {
        let mut sys = System::new(eye_sizes);
        let mut fi = 0;
        let mut wi = 0;
        for (e, &n) in eye_sizes.iter().enumerate() {
            for i in 1..=n {
                fi += 1;
                wi += 1;
                sys.push_disc(Disc {
                    name: format!("f{fi}"),
                    kind: Kind::Finger,
                    r_eye: e,
                    g_eye: e,
                    corners: (2 * i - 2, 2 * i - 1),
                    germ: (0, 0),
                    offset: H2Class::zero(),
                    g_arc: None,
                    r_arc: None,
                });
                sys.push_disc(Disc {
                    name: format!("w{wi}"),
                    kind: Kind::Whitney,
                    r_eye: e,
                    g_eye: e,
                    corners: (2 * i - 1, 2 * i),
                    germ: (0, 0),
                    offset: H2Class::zero(),
                    g_arc: None,
                    r_arc: None,
                });
            }
        }
        sys
    }

    pub fn eyes(&self) -> &[Eye] {
        &self.eyes
    }

    pub fn eye(&self, i: usize) -> Result<&Eye> {
        self.eyes.get(i).ok_or(Error::UnknownEye(i))
    }

    pub fn cross_points(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.cross_points
    }

    pub fn set_cross_points(&mut self, r: usize, g: usize, count: usize) {
        self.cross_points.insert((r, g), count);
    }

    pub fn discs(&self) -> &[Disc] {
        &self.discs
    }

    pub fn disc(&self, ix: DiscIx) -> &Disc {
        &self.discs[ix.0]
    }

    pub fn disc_mut(&mut self, ix: DiscIx) -> &mut Disc {
        &mut self.discs[ix.0]
    }

    pub fn disc_by_name(&self, name: &str) -> Result<DiscIx> {
        self.discs
            .iter()
            .position(|d| d.name == name)
            .map(DiscIx)
            .ok_or_else(|| Error::UnknownDisc(name.to_string()))
    }

    pub fn m(&self) -> &SymBits {
        &self.m
    }

    pub fn m_mut(&mut self) -> &mut SymBits {
        &mut self.m
    }

    pub fn xg(&self) -> &SymCounts {
        &self.xg
    }

    pub fn xr(&self) -> &SymCounts {
        &self.xr
    }

    pub fn xg_mut(&mut self) -> &mut SymCounts {
        &mut self.xg
    }

    pub fn xr_mut(&mut self) -> &mut SymCounts {
        &mut self.xr
    }

    pub fn x(&self, s: crate::moves::Surface) -> &SymCounts {
        match s {
            crate::moves::Surface::G => &self.xg,
            crate::moves::Surface::R => &self.xr,
        }
    }

    pub fn x_mut(&mut self, s: crate::moves::Surface) -> &mut SymCounts {
        match s {
            crate::moves::Surface::G => &mut self.xg,
            crate::moves::Surface::R => &mut self.xr,
        }
    }

    pub fn w_order(&self) -> &BTreeMap<usize, Vec<String>> {
        &self.w_order
    }

    pub fn set_w_order(&mut self, eye: usize, order: Vec<String>) {
        self.w_order.insert(eye, order);
    }

    pub fn clear_w_order(&mut self) {
        self.w_order.clear();
    }

    pub fn push_disc(&mut self, d: Disc) -> DiscIx {
        self.discs.push(d);
        self.m.push_slot();
        self.xg.push_slot();
        self.xr.push_slot();
        DiscIx(self.discs.len() - 1)
    }

    pub fn remove_discs(&mut self, kill: &[DiscIx]) {
        let ks: Vec<usize> = kill.iter().map(|d| d.0).collect();
        let mut i = 0;
        self.discs.retain(|_| {
            let keep = !ks.contains(&i);
            i += 1;
            keep
        });
        self.m.remove_slots(&ks);
        self.xg.remove_slots(&ks);
        self.xr.remove_slots(&ks);
    }

    pub fn point_count(&self, key: PairKey) -> usize {
        if key.is_cross() {
            *self.cross_points.get(&(key.0, key.1)).unwrap_or(&0)
        } else {
            self.eyes.get(key.0).map(|e| e.point_count()).unwrap_or(0)
        }
    }

    /// Sign of a marked point: + at even indices.
    pub fn sign_positive(p: usize) -> bool {
        p % 2 == 0
    }

    /// Appends a (-,+) point pair to a list, returning their indices.
    pub fn append_point_pair(&mut self, key: PairKey) -> (usize, usize) {
        if key.is_cross() {
            let c = self.cross_points.entry((key.0, key.1)).or_insert(0);
            *c += 2;
            (*c - 2 + 1, *c - 2)
        } else {
            let n0 = self.eyes[key.0].point_count();
            self.eyes[key.0].n += 1;
            (n0, n0 + 1)
        }
    }

    /// Removes the adjacent point pair (p, p+1) with p odd; corner references
    /// above shift down by two, preserving the sign-parity convention. The
    /// points must be free of corners when called.
    pub fn remove_point_pair(&mut self, key: PairKey, p: usize) -> Result<()> {
        if p % 2 != 1 {
            return Err(Error::BadMove(format!("point pair must start at an odd index, got {p}")));
        }
        let count = self.point_count(key);
        if p + 1 >= count {
            return Err(Error::BadMove(format!("point pair {p},{} out of range", p + 1)));
        }
        for d in &self.discs {
            if d.pair_key() == key && (d.has_corner(p) || d.has_corner(p + 1)) {
                return Err(Error::BadMove(format!(
                    "points {p},{} still held by disc {}",
                    p + 1,
                    d.name
                )));
            }
        }
        for d in &mut self.discs {
            if d.pair_key() == key {
                let shift = |c: usize| if c > p + 1 { c - 2 } else { c };
                d.corners = (shift(d.corners.0), shift(d.corners.1));
            }
        }
        if key.is_cross() {
            *self.cross_points.get_mut(&(key.0, key.1)).unwrap() -= 2;
        } else {
            self.eyes[key.0].n -= 1;
        }
        Ok(())
    }

    /// Uncross discs of one eye, in slot order.
    pub fn eye_discs(&self, eye: usize) -> Vec<DiscIx> {
        (0..self.discs.len())
            .map(DiscIx)
            .filter(|&d| {
                let dd = self.disc(d);
                dd.r_eye == eye && dd.g_eye == eye
            })
            .collect()
    }

    /// Finger/Whitney occupancy of one point list: `occ.0[p]` is the finger
    /// disc with a corner at p, `occ.1[p]` the Whitney disc.
    pub fn occupancy(&self, key: PairKey) -> (Vec<Option<DiscIx>>, Vec<Option<DiscIx>>) {
        let count = self.point_count(key);
        let mut f = vec![None; count];
        let mut w = vec![None; count];
        for (i, d) in self.discs.iter().enumerate() {
            if d.pair_key() != key {
                continue;
            }
            let slot = match d.kind {
                Kind::Finger => &mut f,
                Kind::Whitney => &mut w,
            };
            for c in [d.corners.0, d.corners.1] {
                if c < count {
                    slot[c] = Some(DiscIx(i));
                }
            }
        }
        (f, w)
    }

    /// The Whitney-missed (+) point of an eye, where the immersed arc starts.
    pub fn w_missed(&self, eye: usize) -> Result<usize> {
        let (_, w) = self.occupancy(PairKey(eye, eye));
        w.iter()
            .position(|o| o.is_none())
            .ok_or_else(|| Error::Invalid(format!("eye {eye}: no Whitney-missed point")))
    }

    pub fn f_missed(&self, eye: usize) -> Result<usize> {
        let (f, _) = self.occupancy(PairKey(eye, eye));
        f.iter()
            .position(|o| o.is_none())
            .ok_or_else(|| Error::Invalid(format!("eye {eye}: no finger-missed point")))
    }

    /// Decomposes an eye's pairing multigraph into the path and its cycles.
    pub fn components(&self, eye: usize) -> Result<Components> {
        let key = PairKey(eye, eye);
        let (focc, wocc) = self.occupancy(key);
        let start = self.w_missed(eye)?;
        let end = self.f_missed(eye)?;
        let mut used = vec![false; self.discs.len()];
        let mut path = Vec::new();
        if start != end {
            let mut p = start;
            loop {
                let next = if path.len() % 2 == 0 { focc[p] } else { wocc[p] };
                let Some(d) = next else {
                    return Err(Error::Invalid(format!(
                        "eye {eye}: pairing path breaks at point {p}"
                    )));
                };
                used[d.0] = true;
                path.push(d);
                p = self.disc(d).other_corner(p);
                if p == end && path.len() % 2 == 0 {
                    break;
                }
                if path.len() > 2 * self.discs.len() {
                    return Err(Error::Invalid(format!("eye {eye}: pairing path does not close")));
                }
            }
        }
        let mut cycles = Vec::new();
        for d in self.eye_discs(eye) {
            if used[d.0] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut cur = d;
            let mut p = self.disc(d).pos_corner();
            loop {
                used[cur.0] = true;
                cyc.push(cur);
                let onext = match self.disc(cur).kind {
                    Kind::Finger => wocc[p],
                    Kind::Whitney => focc[p],
                };
                let Some(nx) = onext else {
                    return Err(Error::Invalid(format!(
                        "eye {eye}: cycle through {} breaks at point {p}",
                        self.disc(d).name
                    )));
                };
                if nx == d {
                    break;
                }
                p = self.disc(nx).other_corner(p);
                cur = nx;
            }
            cycles.push(cyc);
        }
        Ok(Components { path, path_start: start, path_end: end, cycles })
    }

    /// Position classification of one eye.
    pub fn classify(&self, eye: usize) -> Result<Position> {
        let comps = self.components(eye)?;
        if !comps.cycles.is_empty() {
            return Ok(Position::General);
        }
        let discs = self.eye_discs(eye);
        let mut g_clear = true;
        let mut r_clear = true;
        for (a, &da) in discs.iter().enumerate() {
            for &db in discs.iter().skip(a + 1) {
                if self.xg.get(da.0, db.0) != 0 {
                    g_clear = false;
                }
                if self.xr.get(da.0, db.0) != 0 {
                    r_clear = false;
                }
            }
        }
        Ok(match (g_clear, r_clear) {
            (true, true) => Position::Ea,
            (true, false) => Position::GEa,
            (false, true) => Position::REa,
            (false, false) => Position::Ia,
        })
    }

    /// The linear order of an eye's discs along its immersed arc, oriented
    /// from the finger end. Errors unless the eye is IA.
    pub fn ia_order(&self, eye: usize) -> Result<Vec<DiscIx>> {
        let comps = self.components(eye)?;
        if !comps.cycles.is_empty() {
            return Err(Error::NotIa(eye));
        }
        Ok(comps.path)
    }

    /// Exchanges the roles of the finger and Whitney families. Attached arcs
    /// survive (the spheres are untouched); declared orderings are dropped.
    pub fn swap_roles(&self) -> System {
        let mut out = self.clone();
        for d in &mut out.discs {
            d.kind = d.kind.opposite();
        }
        out.w_order.clear();
        out
    }

    pub fn has_arcs(&self) -> bool {
        self.discs.iter().any(|d| d.g_arc.is_some() || d.r_arc.is_some())
    }

    pub fn drop_arcs(&mut self) {
        for d in &mut self.discs {
            d.g_arc = None;
            d.r_arc = None;
        }
    }

    /// Full validation; an empty list means the system is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeMap::new();
        for (i, d) in self.discs.iter().enumerate() {
            if let Some(prev) = seen.insert(d.name.clone(), i) {
                out.push(Violation {
                    invariant: "disc-ids-unique",
                    detail: format!("discs {prev} and {i} share the id {}", d.name),
                });
            }
            if d.r_eye >= self.eyes.len() || d.g_eye >= self.eyes.len() {
                out.push(Violation {
                    invariant: "eye-range",
                    detail: format!("disc {} references a missing eye", d.name),
                });
                continue;
            }
            let count = self.point_count(d.pair_key());
            if d.corners.0 >= count || d.corners.1 >= count {
                out.push(Violation {
                    invariant: "corner-range",
                    detail: format!("disc {} corners {:?} out of range", d.name, d.corners),
                });
                continue;
            }
            if d.corners.0 == d.corners.1 {
                out.push(Violation {
                    invariant: "corner-distinct",
                    detail: format!("disc {} repeats a corner", d.name),
                });
            }
            if Self::sign_positive(d.corners.0) == Self::sign_positive(d.corners.1) {
                out.push(Violation {
                    invariant: "corner-signs",
                    detail: format!(
                        "disc {} must pair one positive with one negative point",
                        d.name
                    ),
                });
            }
            if (d.germ.0 + d.germ.1) % 2 != 0 {
                out.push(Violation {
                    invariant: "p+q even",
                    detail: format!("disc {} has germ {:?}", d.name, d.germ),
                });
            }
        }
        // Completeness of the matchings.
        let mut keys: Vec<PairKey> = (0..self.eyes.len()).map(|i| PairKey(i, i)).collect();
        keys.extend(self.cross_points.keys().map(|&(r, g)| PairKey(r, g)));
        for key in keys {
            let count = self.point_count(key);
            if key.is_cross() && count % 2 != 0 {
                out.push(Violation {
                    invariant: "cross-count-even",
                    detail: format!("cross list {:?} has odd point count {count}", key),
                });
            }
            let mut fdeg = vec![0usize; count];
            let mut wdeg = vec![0usize; count];
            for d in &self.discs {
                if d.pair_key() != key {
                    continue;
                }
                let deg = match d.kind {
                    Kind::Finger => &mut fdeg,
                    Kind::Whitney => &mut wdeg,
                };
                for c in [d.corners.0, d.corners.1] {
                    if c < count {
                        deg[c] += 1;
                    }
                }
            }
            for (deg, fam) in [(&fdeg, "finger"), (&wdeg, "Whitney")] {
                if let Some(p) = deg.iter().position(|&d| d > 1) {
                    out.push(Violation {
                        invariant: "corner-disjoint",
                        detail: format!("point {p} of {key:?} held by several {fam} discs"),
                    });
                }
                let missed = deg.iter().filter(|&&d| d == 0).count();
                let want = if key.is_cross() { 0 } else { 1 };
                if missed != want {
                    out.push(Violation {
                        invariant: "complete",
                        detail: format!(
                            "{fam} family of {key:?} misses {missed} points (expected {want})"
                        ),
                    });
                }
            }
        }
        // Crossings only between arcs on a shared sphere.
        for i in 0..self.discs.len() {
            for j in (i + 1)..self.discs.len() {
                let (a, b) = (&self.discs[i], &self.discs[j]);
                if self.xg.get(i, j) != 0 && a.g_eye != b.g_eye {
                    out.push(Violation {
                        invariant: "xg-same-sphere",
                        detail: format!("{} and {} cross on G but live on different greens", a.name, b.name),
                    });
                }
                if self.xr.get(i, j) != 0 && a.r_eye != b.r_eye {
                    out.push(Violation {
                        invariant: "xr-same-sphere",
                        detail: format!("{} and {} cross on R but live on different reds", a.name, b.name),
                    });
                }
            }
        }
        // Attached arcs must match corners and crossing counts.
        if self.has_arcs() {
            out.extend(self.validate_arcs());
        }
        out
    }

    fn validate_arcs(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for d in &self.discs {
            for (arc, surf) in [(&d.g_arc, "g"), (&d.r_arc, "r")] {
                if let Some(a) = arc {
                    if !a.is_reduced() {
                        out.push(Violation {
                            invariant: "arcs-reduced",
                            detail: format!("{} {surf}-arc is not in minimal position", d.name),
                        });
                    }
                    let ends = (a.start.min(a.end), a.start.max(a.end));
                    if ends != d.corners {
                        out.push(Violation {
                            invariant: "arc-endpoints",
                            detail: format!("{} {surf}-arc endpoints do not match corners", d.name),
                        });
                    }
                }
            }
        }
        for i in 0..self.discs.len() {
            for j in (i + 1)..self.discs.len() {
                let (a, b) = (&self.discs[i], &self.discs[j]);
                if a.pair_key() != b.pair_key() {
                    continue;
                }
                let sphere = crate::arc::MarkedSphere { points: self.point_count(a.pair_key()) };
                if let (Some(ga), Some(gb)) = (&a.g_arc, &b.g_arc) {
                    let c = crate::arc::crossings_on(ga, gb, &sphere);
                    if c as u32 != self.xg.get(i, j) {
                        out.push(Violation {
                            invariant: "xg-matches-arcs",
                            detail: format!(
                                "xg({},{}) = {} but the arcs cross {} times",
                                a.name,
                                b.name,
                                self.xg.get(i, j),
                                c
                            ),
                        });
                    }
                }
                if let (Some(ra), Some(rb)) = (&a.r_arc, &b.r_arc) {
                    let c = crate::arc::crossings_on(ra, rb, &sphere);
                    if c as u32 != self.xr.get(i, j) {
                        out.push(Violation {
                            invariant: "xr-matches-arcs",
                            detail: format!(
                                "xr({},{}) = {} but the arcs cross {} times",
                                a.name,
                                b.name,
                                self.xr.get(i, j),
                                c
                            ),
                        });
                    }
                }
            }
        }
        out
    }

    /// Fresh disc names continuing the fN/wN numbering.
    pub fn fresh_name(&self, kind: Kind) -> String {
        let prefix = match kind {
            Kind::Finger => "f",
            Kind::Whitney => "w",
        };
        let mut max = 0usize;
        for d in &self.discs {
            if let Some(rest) = d.name.strip_prefix(prefix) {
                if let Ok(k) = rest.parse::<usize>() {
                    max = max.max(k);
                }
            }
        }
        format!("{prefix}{}", max + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text;

    #[test]
    fn standard_system_is_valid_and_ea() {
        let sys = System::standard(&[3]);
        assert!(sys.validate().is_empty());
        assert_eq!(sys.classify(0).unwrap(), Position::Ea);
    }

    #[test]
    fn standard_path_alternates_from_the_finger_end() {
        let sys = System::standard(&[3]);
        let order = sys.ia_order(0).unwrap();
        let names: Vec<&str> = order.iter().map(|&d| sys.disc(d).name.as_str()).collect();
        assert_eq!(names, ["f1", "w1", "f2", "w2", "f3", "w3"]);
    }

    #[test]
    fn post_birth_pair_is_a_two_cycle() {
        let sys = System::standard(&[1]);
        let sys = crate::moves::birth(&sys, 0).unwrap();
        let comps = sys.components(0).unwrap();
        assert_eq!(comps.cycles.len(), 1);
        assert_eq!(comps.cycles[0].len(), 2);
        assert_eq!(sys.classify(0).unwrap(), Position::General);
        // Birth on an empty eye does the same.
        let empty = System::standard(&[0]);
        let born = crate::moves::birth(&empty, 0).unwrap();
        assert_eq!(born.classify(0).unwrap(), Position::General);
        assert_eq!(born.components(0).unwrap().path.len(), 0);
    }

    #[test]
    fn corner_sign_violation_is_reported() {
        let mut sys = System::standard(&[1]);
        let f = sys.disc_by_name("f1").unwrap();
        sys.disc_mut(f).corners = (0, 2); // two positive points
        let v = sys.validate();
        assert!(v.iter().any(|x| x.invariant == "corner-signs"));
    }

    #[test]
    fn odd_germ_total_is_reported() {
        let mut sys = System::standard(&[1]);
        let f = sys.disc_by_name("f1").unwrap();
        sys.disc_mut(f).germ = (1, 0);
        let v = sys.validate();
        assert!(v.iter().any(|x| x.invariant == "p+q even"));
    }

    #[test]
    fn key_example_is_ea() {
        // Tubing the Whitney disc into a linking sphere leaves the boundary
        // untouched: same classification as the standard pair.
        let sys = text::key_example();
        assert!(sys.validate().is_empty());
        assert_eq!(sys.classify(0).unwrap(), Position::Ea);
    }

    #[test]
    fn half_embedded_positions_are_distinguished() {
        let mut sys = System::standard(&[2]);
        let f1 = sys.disc_by_name("f1").unwrap();
        let w2 = sys.disc_by_name("w2").unwrap();
        sys.xr_mut().set(f1.0, w2.0, 1);
        assert_eq!(sys.classify(0).unwrap(), Position::GEa);
        sys.xg_mut().set(f1.0, w2.0, 1);
        assert_eq!(sys.classify(0).unwrap(), Position::Ia);
        sys.xr_mut().set(f1.0, w2.0, 0);
        assert_eq!(sys.classify(0).unwrap(), Position::REa);
    }

    #[test]
    fn new_order_figure_cycle_and_ia_order() {
        // One 2-cycle {f1, w2} spliced ahead of the arc f2 w3 f3 w1 f4 w4;
        // switching w2 out realizes f1 < w2* < f2 < w3 < f3 < w1 < f4 < w4.
        let mut sys = System::new(&[4]);
        let mk = |name: &str, kind, a: usize, b: usize| Disc {
            name: name.into(),
            kind,
            r_eye: 0,
            g_eye: 0,
            corners: (a.min(b), a.max(b)),
            germ: (0, 0),
            offset: crate::homology::H2Class::zero(),
            g_arc: None,
            r_arc: None,
        };
        sys.push_disc(mk("f2", Kind::Finger, 0, 1));
        sys.push_disc(mk("w3", Kind::Whitney, 1, 2));
        sys.push_disc(mk("f3", Kind::Finger, 2, 3));
        sys.push_disc(mk("w1", Kind::Whitney, 3, 4));
        sys.push_disc(mk("f4", Kind::Finger, 4, 5));
        sys.push_disc(mk("w4", Kind::Whitney, 5, 6));
        sys.push_disc(mk("f1", Kind::Finger, 8, 7));
        sys.push_disc(mk("w2", Kind::Whitney, 8, 7));
        assert!(sys.validate().is_empty());
        let comps = sys.components(0).unwrap();
        assert_eq!(comps.cycles.len(), 1);
        let cyc: Vec<&str> = comps.cycles[0].iter().map(|&d| sys.disc(d).name.as_str()).collect();
        assert!(cyc.contains(&"f1") && cyc.contains(&"w2"));
        let order = crate::moves::resolve_order(&sys, 0, &[]).unwrap();
        let named: Vec<&str> = order.iter().map(|&d| sys.disc(d).name.as_str()).collect();
        assert_eq!(named, ["w3", "w1", "w4", "w2"]); // negative corners 1,3,5,7
        // The declared ordering of the figure is the standard one by name.
        let by_name: Vec<String> =
            ["w1", "w2", "w3", "w4"].iter().map(|s| s.to_string()).collect();
        let ord = crate::moves::resolve_order(&sys, 0, &by_name).unwrap();
        let (switched, info) = crate::moves::k_switch(&sys, 0, &ord).unwrap();
        assert_eq!(info.k, 1);
        assert_eq!(switched.classify(0).unwrap(), Position::Ea);
        let ia = switched.ia_order(0).unwrap();
        let names: Vec<&str> = ia.iter().map(|&d| switched.disc(d).name.as_str()).collect();
        assert_eq!(names, ["f1", "w2", "f2", "w3", "f3", "w1", "f4", "w4"]);
    }

    #[test]
    fn role_swap_reverses_the_arc() {
        let sys = System::standard(&[2]);
        let swapped = sys.swap_roles();
        assert!(swapped.validate().is_empty());
        let order = swapped.ia_order(0).unwrap();
        let names: Vec<&str> = order.iter().map(|&d| swapped.disc(d).name.as_str()).collect();
        assert_eq!(names, ["w2", "f2", "w1", "f1"]);
    }
}
