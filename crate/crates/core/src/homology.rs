//! Z2 vector algebra over the generating surfaces of the sphere-pair
//! complement: Clifford tori at disc corners, linking spheres of solid
//! fingers, and the finger/Whitney spheres of the moves. Pairings are the
//! corner-incidence rules those surfaces satisfy against discs.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::matrix::SymBits;
use crate::system::{DiscIx, Kind, System};
use crate::{Error, Result};

/// A generating surface of H2 of the complement, named by the disc whose
/// corners or finger it sits at.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Generator {
    /// Pair of Clifford tori at the named disc's two corners.
    Clifford(String),
    /// 2-sphere linking the solid finger of the named Whitney disc.
    Linking(String),
    /// Finger or Whitney sphere of the named disc's move.
    MoveSphere(String),
}

/// Z2 class: a set of generators (coefficient 1 entries).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct H2Class {
    gens: BTreeSet<Generator>,
}

impl H2Class {
    pub fn zero() -> Self {
        H2Class::default()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn single(g: Generator) -> Self {
        let mut gens = BTreeSet::new();
        gens.insert(g);
        H2Class { gens }
    }

    /// Z2 addition: symmetric difference.
    pub fn add(&mut self, other: &H2Class) {
        for g in &other.gens {
            if !self.gens.remove(g) {
                self.gens.insert(g.clone());
            }
        }
    }

    pub fn toggle(&mut self, g: Generator) {
        if !self.gens.remove(&g) {
            self.gens.insert(g);
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }
}

/// Mod-2 intersection of a generator with a disc of the system, per the
/// incidence rules:
/// - Clifford pair of disc d vs disc e: number of shared corners of d and e.
/// - Linking sphere of Whitney disc w vs finger f: 1 iff f has a corner at
///   w's negative corner; 0 against Whitney discs.
/// - Finger sphere of finger f vs Whitney disc w: number of shared corners
///   (and symmetrically for Whitney spheres against fingers); 0 against discs
///   of the same kind as the sphere's owner.
pub fn pair_generator_disc(sys: &System, g: &Generator, e: DiscIx) -> Result<bool> {
    match g {
        Generator::Clifford(name) => {
            let d = sys.disc_by_name(name)?;
            Ok(shared_corners(sys, d, e) % 2 == 1)
        }
        Generator::Linking(name) => {
            let w = sys.disc_by_name(name)?;
            if sys.disc(e).kind == sys.disc(w).kind {
                return Ok(false);
            }
            if sys.disc(w).kind != Kind::Whitney {
                return Err(Error::KindMismatch(String::from(
                    "linking spheres are indexed by Whitney discs",
                )));
            }
            let neg = sys.disc(w).neg_corner();
            let de = sys.disc(e);
            Ok(de.pair_key() == sys.disc(w).pair_key() && (de.corners.0 == neg || de.corners.1 == neg))
        }
        Generator::MoveSphere(name) => {
            let d = sys.disc_by_name(name)?;
            if sys.disc(d).kind == sys.disc(e).kind {
                return Ok(false);
            }
            Ok(shared_corners(sys, d, e) % 2 == 1)
        }
    }
}

/// Mod-2 pairing of a class with a disc.
pub fn pair_class_disc(sys: &System, c: &H2Class, e: DiscIx) -> Result<bool> {
    let mut acc = false;
    for g in c.generators() {
        acc ^= pair_generator_disc(sys, g, e)?;
    }
    Ok(acc)
}

/// Number of marked points that are corners of both discs (0, 1 or 2).
pub fn shared_corners(sys: &System, d: DiscIx, e: DiscIx) -> usize {
    let (a, b) = (sys.disc(d), sys.disc(e));
    if a.pair_key() != b.pair_key() {
        return 0;
    }
    let mut n = 0;
    for p in [a.corners.0, a.corners.1] {
        if p == b.corners.0 || p == b.corners.1 {
            n += 1;
        }
    }
    n
}

/// The class of the Clifford torus pair at a disc's corners.
pub fn clifford_class(sys: &System, d: DiscIx) -> H2Class {
    H2Class::single(Generator::Clifford(sys.disc(d).name.clone()))
}

/// Witness matrices for a Clifford equivalence: per-eye coefficient matrices
/// for the Whitney side (n) and the finger side (m), with their traces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordWitness {
    /// (target disc name, source disc name) pairs with coefficient 1.
    pub additions: Vec<(String, String)>,
    pub whitney_trace: bool,
    pub finger_trace: bool,
}

/// Decides whether two similarly matched systems differ by Clifford tori with
/// zero trace on each side, returning witnessing coefficients when they do.
///
/// The equation solved per eye, over Z2 unknowns n_{t,s} (Whitney side) and
/// m_{t,s} (finger side):
///   M_B(f, w) - M_A(f, w) = sum_s n_{w,s} <C_{w_s}, f> + sum_s m_{f,s} <C_{f_s}, w>
pub fn clifford_equivalent(a: &System, b: &System) -> Result<Option<CliffordWitness>> {
    similarly_matched(a, b)?;
    let n = a.discs().len();
    // Unknowns: one per ordered (target, source) same-kind pair.
    let mut unknowns: Vec<(DiscIx, DiscIx)> = Vec::new();
    for t in 0..n {
        for s in 0..n {
            let (dt, ds) = (a.disc(DiscIx(t)), a.disc(DiscIx(s)));
            if dt.kind == ds.kind && dt.eye_class() == ds.eye_class() {
                unknowns.push((DiscIx(t), DiscIx(s)));
            }
        }
    }
    // Equations: one per unordered opposite-kind pair (and same-kind pairs,
    // whose deltas must be attainable too since Clifford pairs hit all discs).
    let mut rows: Vec<(Vec<bool>, bool)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let delta = a.m().get(i, j) ^ b.m().get(i, j);
            let mut coeffs = Vec::with_capacity(unknowns.len());
            for &(t, s) in &unknowns {
                // Adding C_{source} to `target` changes M(target, e) by the
                // corner incidence of source with e.
                let mut c = false;
                if t.0 == i {
                    c ^= shared_corners(a, s, DiscIx(j)) % 2 == 1;
                }
                if t.0 == j {
                    c ^= shared_corners(a, s, DiscIx(i)) % 2 == 1;
                }
                coeffs.push(c);
            }
            rows.push((coeffs, delta));
        }
    }
    let sol = match solve_gf2(&rows, unknowns.len()) {
        Some(s) => s,
        None => return Ok(None),
    };
    // Try to zero both traces within the solution's affine space.
    let sol = match fix_traces(a, &unknowns, &rows, sol) {
        Some(s) => s,
        None => return Ok(None),
    };
    let mut additions = Vec::new();
    let (mut wt, mut ft) = (false, false);
    for (k, &(t, s)) in unknowns.iter().enumerate() {
        if sol[k] {
            additions.push((a.disc(t).name.clone(), a.disc(s).name.clone()));
            if t == s {
                match a.disc(t).kind {
                    Kind::Whitney => wt ^= true,
                    Kind::Finger => ft ^= true,
                }
            }
        }
    }
    if wt || ft {
        return Ok(None);
    }
    Ok(Some(CliffordWitness { additions, whitney_trace: wt, finger_trace: ft }))
}

fn similarly_matched(a: &System, b: &System) -> Result<()> {
    if a.eyes().len() != b.eyes().len() || a.discs().len() != b.discs().len() {
        return Err(Error::Invalid(String::from("systems are not similarly matched")));
    }
    for (da, db) in a.discs().iter().zip(b.discs().iter()) {
        if da.name != db.name
            || da.kind != db.kind
            || da.r_eye != db.r_eye
            || da.g_eye != db.g_eye
            || da.corners != db.corners
            || da.germ != db.germ
        {
            return Err(Error::Invalid(String::from(
                "systems are not similarly matched (corner/germ data differ)",
            )));
        }
    }
    Ok(())
}

/// Gaussian elimination over GF(2); returns one solution if consistent.
fn solve_gf2(rows: &[(Vec<bool>, bool)], nvars: usize) -> Option<Vec<bool>> {
    let mut mat: Vec<(Vec<bool>, bool)> = rows.to_vec();
    let mut pivot_of_var: Vec<Option<usize>> = alloc::vec![None; nvars];
    let mut r = 0;
    for v in 0..nvars {
        let Some(p) = (r..mat.len()).find(|&i| mat[i].0[v]) else { continue };
        mat.swap(r, p);
        let row_r = mat[r].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i != r && row.0[v] {
                for k in 0..nvars {
                    row.0[k] ^= row_r.0[k];
                }
                row.1 ^= row_r.1;
            }
        }
        pivot_of_var[v] = Some(r);
        r += 1;
        if r == mat.len() {
            break;
        }
    }
    // Inconsistent rows: all-zero coefficients with rhs 1.
    for (coeffs, rhs) in &mat {
        if *rhs && coeffs.iter().all(|&c| !c) {
            return None;
        }
    }
    let mut sol = alloc::vec![false; nvars];
    for v in 0..nvars {
        if let Some(p) = pivot_of_var[v] {
            sol[v] = mat[p].1;
        }
    }
    Some(sol)
}

/// Adjusts a particular solution by homogeneous solutions so both diagonal
/// traces vanish, if possible. Diagonal unknowns (t == s) pair a disc with
/// itself; a single C_{d} added to d twice is the cheapest homogeneous move.
fn fix_traces(
    sys: &System,
    unknowns: &[(DiscIx, DiscIx)],
    rows: &[(Vec<bool>, bool)],
    mut sol: Vec<bool>,
) -> Option<Vec<bool>> {
    let trace = |sol: &[bool], kind: Kind| -> bool {
        let mut t = false;
        for (k, &(a, b)) in unknowns.iter().enumerate() {
            if sol[k] && a == b && sys.disc(a).kind == kind {
                t ^= true;
            }
        }
        t
    };
    // Homogeneous generators: pairs of equal-effect unknowns. Two diagonal
    // additions C_{d} to d and C_{d'} to d' have identical (zero) effect rows
    // only when their incidence columns agree; search the null space lazily by
    // trying single homogeneous vectors from the kernel basis.
    let kernel = kernel_basis(rows, unknowns.len());
    for mask in 0..(1u32 << kernel.len().min(16)) {
        let mut cand = sol.clone();
        for (bi, basis) in kernel.iter().enumerate() {
            if mask & (1 << bi) != 0 {
                for k in 0..cand.len() {
                    cand[k] ^= basis[k];
                }
            }
        }
        if !trace(&cand, Kind::Whitney) && !trace(&cand, Kind::Finger) {
            sol = cand;
            return Some(sol);
        }
    }
    None
}

fn kernel_basis(rows: &[(Vec<bool>, bool)], nvars: usize) -> Vec<Vec<bool>> {
    // Row-reduce the homogeneous system and read off free-variable vectors.
    let mut mat: Vec<Vec<bool>> = rows.iter().map(|(c, _)| c.clone()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for v in 0..nvars {
        let Some(p) = (r..mat.len()).find(|&i| mat[i][v]) else { continue };
        mat.swap(r, p);
        let row_r = mat[r].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i != r && row[v] {
                for k in 0..nvars {
                    row[k] ^= row_r[k];
                }
            }
        }
        pivots.push((r, v));
        r += 1;
        if r == mat.len() {
            break;
        }
    }
    let pivot_vars: BTreeSet<usize> = pivots.iter().map(|&(_, v)| v).collect();
    let mut basis = Vec::new();
    for free in (0..nvars).filter(|v| !pivot_vars.contains(v)) {
        let mut vec = alloc::vec![false; nvars];
        vec[free] = true;
        for &(pr, pv) in &pivots {
            if mat[pr][free] {
                vec[pv] = true;
            }
        }
        basis.push(vec);
        if basis.len() >= 16 {
            break; // cap; systems here are tiny
        }
    }
    basis
}

/// Applies a set of Clifford additions to a copy of the M matrix; used by the
/// equivalence checker's verification path and by tests.
pub fn apply_clifford_deltas(sys: &System, adds: &[(DiscIx, DiscIx)], m: &mut SymBits) {
    for &(t, s) in adds {
        for e in 0..sys.discs().len() {
            if e == t.0 {
                continue;
            }
            if shared_corners(sys, s, DiscIx(e)) % 2 == 1 {
                m.flip(t.0, e);
            }
        }
    }
}
