//! The invariant pipeline: switching to the immersed arc condition, sliding
//! to the embedded arc condition, and summing the interior intersection
//! parities along the arc — per eye, mod 2.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::moves::{self, Move, Surface, SwitchInfo};
use crate::system::{DiscIx, Kind, Position, System};
use crate::{Error, Result};

/// Result of one invariant computation: per-eye bits, their total, and the
/// replayable script (switchings and slides) that reached embedded arc
/// position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantResult {
    pub bits: Vec<bool>,
    pub script: Vec<Move>,
}

impl InvariantResult {
    pub fn total(&self) -> bool {
        self.bits.iter().fold(false, |a, &b| a ^ b)
    }

    /// Bits as 0/1 digits, e.g. "(0,1,0)".
    pub fn display_bits(&self) -> String {
        let mut s = String::from("(");
        for (i, b) in self.bits.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push(if *b { '1' } else { '0' });
        }
        s.push(')');
        s
    }
}

/// Upper-diagonal interior intersection sum of an IA system, per eye: the
/// sum of M(f, w) over same-eye pairs with f before w along the immersed arc.
/// Cross discs contribute nothing.
pub fn hat_i(sys: &System) -> Result<Vec<bool>> {
    let mut bits = Vec::with_capacity(sys.eyes().len());
    for eye in 0..sys.eyes().len() {
        let order = sys.ia_order(eye)?;
        let mut bit = false;
        for (i, &f) in order.iter().enumerate() {
            if sys.disc(f).kind != Kind::Finger {
                continue;
            }
            for &w in order.iter().skip(i + 1) {
                if sys.disc(w).kind == Kind::Whitney {
                    bit ^= sys.m().get(f.0, w.0);
                }
            }
        }
        bits.push(bit);
    }
    Ok(bits)
}

/// Constructive reduction from immersed to embedded arc position: crossings
/// are removed one at a time by swinging the later disc of the earliest
/// crossing pair about the sphere, green side first, then red. Half-EA
/// inputs therefore use only the complementary slide family.
pub fn slide_to_ea(sys: &System) -> Result<(System, Vec<Move>)> {
    let mut cur = sys.clone();
    let mut script = Vec::new();
    for eye in 0..cur.eyes().len() {
        for surface in [Surface::G, Surface::R] {
            loop {
                let order = cur.ia_order(eye)?;
                let Some((a, b)) = first_crossing(&cur, surface, &order) else {
                    break;
                };
                let mv = Move::Swing {
                    surface,
                    mover: cur.disc(b).name.clone(),
                    target: cur.disc(a).name.clone(),
                };
                cur = moves::apply(&cur, &mv)?;
                script.push(mv);
                if script.len() > 100_000 {
                    return Err(Error::Invalid(String::from(
                        "slide budget exhausted while reducing to EA",
                    )));
                }
            }
        }
    }
    Ok((cur, script))
}

/// Earliest crossing pair along the arc: (earlier disc, later disc).
fn first_crossing(sys: &System, surface: Surface, order: &[DiscIx]) -> Option<(DiscIx, DiscIx)> {
    for (i, &a) in order.iter().enumerate() {
        for &b in order.iter().skip(i + 1) {
            if sys.x(surface).get(a.0, b.0) > 0 {
                return Some((a, b));
            }
        }
    }
    None
}

/// The full pipeline: per-eye order-induced switching (the given ordering,
/// else the system's declared one, else corner-index order), reduction to
/// embedded arc position, and the upper-diagonal sum.
pub fn compute_i(sys: &System, order: Option<&BTreeMap<usize, Vec<String>>>) -> Result<InvariantResult> {
    let violations = sys.validate();
    if let Some(v) = violations.first() {
        return Err(Error::Invalid(alloc::format!("{}: {}", v.invariant, v.detail)));
    }
    let mut cur = sys.clone();
    let mut script = Vec::new();
    let mut infos: Vec<SwitchInfo> = Vec::new();
    for eye in 0..cur.eyes().len() {
        let named: Vec<String> = match order.and_then(|o| o.get(&eye)) {
            Some(names) => names.clone(),
            None => Vec::new(),
        };
        let ord = moves::resolve_order(&cur, eye, &named)?;
        let (next, info) = moves::k_switch(&cur, eye, &ord)?;
        if info.k > 0 {
            script.push(Move::Switch {
                eye,
                order: ord.iter().map(|&d| cur.disc(d).name.clone()).collect(),
            });
        }
        infos.push(info);
        cur = next;
    }
    let (ea, slides) = slide_to_ea(&cur)?;
    script.extend(slides);
    let bits = hat_i(&ea)?;
    debug_assert!((0..ea.eyes().len()).all(|e| matches!(ea.classify(e), Ok(Position::Ea))));
    Ok(InvariantResult { bits, script })
}

/// Concatenation of two finger-first systems with the same eye count: the
/// second factor's discs are traversed first along each eye's arc, with no
/// intersections between the blocks.
pub fn concatenate(a: &System, b: &System) -> Result<System> {
    if a.eyes().len() != b.eyes().len() {
        return Err(Error::Invalid(String::from(
            "concatenation needs matching eye counts",
        )));
    }
    if !a.cross_points().is_empty() || !b.cross_points().is_empty() {
        return Err(Error::Invalid(String::from(
            "concatenation of systems with cross discs is not supported",
        )));
    }
    let sizes: Vec<usize> = a
        .eyes()
        .iter()
        .zip(b.eyes())
        .map(|(ea, eb)| ea.n + eb.n)
        .collect();
    let mut out = System::new(&sizes);
    // B block first: its points keep their indices; A's shift by 2 n_b.
    let mut add = |src: &System, other: &System, shift: bool, tag: &str| -> Vec<DiscIx> {
        let mut map = Vec::new();
        for d in src.discs() {
            let off = if shift { 2 * other.eyes()[d.r_eye].n } else { 0 };
            let mut nd = d.clone();
            nd.corners = (d.corners.0 + off, d.corners.1 + off);
            nd.name = alloc::format!("{tag}{}", d.name);
            nd.g_arc = None;
            nd.r_arc = None;
            map.push(out.push_disc(nd));
        }
        map
    };
    let bmap = add(b, a, false, "b.");
    let amap = add(a, b, true, "a.");
    for (src, map) in [(b, &bmap), (a, &amap)] {
        for i in 0..src.discs().len() {
            for j in (i + 1)..src.discs().len() {
                out.m_mut().set(map[i].0, map[j].0, src.m().get(i, j));
                out.xg_mut().set(map[i].0, map[j].0, src.xg().get(i, j));
                out.xr_mut().set(map[i].0, map[j].0, src.xr().get(i, j));
            }
        }
    }
    Ok(out)
}

/// The Parity Lemma hypotheses, as a predicate: similarly matched, both IA,
/// equal hat invariants, and all pairwise boundary crossing differences even.
pub fn parity_hypotheses(a: &System, b: &System) -> Result<bool> {
    if a.eyes().len() != b.eyes().len() || a.discs().len() != b.discs().len() {
        return Ok(false);
    }
    for (da, db) in a.discs().iter().zip(b.discs().iter()) {
        if da.kind != db.kind
            || da.r_eye != db.r_eye
            || da.g_eye != db.g_eye
            || da.corners != db.corners
        {
            return Ok(false);
        }
    }
    for eye in 0..a.eyes().len() {
        if !a.components(eye)?.cycles.is_empty() || !b.components(eye)?.cycles.is_empty() {
            return Ok(false);
        }
    }
    if hat_i(a)? != hat_i(b)? {
        return Ok(false);
    }
    for i in 0..a.discs().len() {
        for j in (i + 1)..a.discs().len() {
            if (a.xg().get(i, j) % 2) != (b.xg().get(i, j) % 2)
                || (a.xr().get(i, j) % 2) != (b.xr().get(i, j) % 2)
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Padding: extends a system by trivial eyes (no discs).
pub fn pad_with_trivial_eyes(sys: &System, extra: usize) -> System {
    let mut sizes: Vec<usize> = sys.eyes().iter().map(|e| e.n).collect();
    sizes.extend(core::iter::repeat(0).take(extra));
    let mut fresh = System::new(&sizes);
    for (k, v) in sys.cross_points() {
        fresh.set_cross_points(k.0, k.1, *v);
    }
    for d in sys.discs() {
        fresh.push_disc(d.clone());
    }
    for i in 0..sys.discs().len() {
        for j in (i + 1)..sys.discs().len() {
            fresh.m_mut().set(i, j, sys.m().get(i, j));
            fresh.xg_mut().set(i, j, sys.xg().get(i, j));
            fresh.xr_mut().set(i, j, sys.xr().get(i, j));
        }
    }
    fresh
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{self, Move, PathSpec};
    use crate::system::System;
    use crate::text;

    fn i_of(sys: &System) -> Vec<bool> {
        compute_i(sys, None).unwrap().bits
    }

    #[test]
    fn key_example_has_invariant_one() {
        assert_eq!(i_of(&text::key_example()), [true]);
        assert_eq!(i_of(&text::standard_example()), [false]);
    }

    #[test]
    fn key_in_each_eye_gives_the_basis_vectors() {
        for k in 1..=3 {
            for j in 0..k {
                let sys = text::key_in_eye(k, j);
                let bits = i_of(&sys);
                for (e, b) in bits.iter().enumerate() {
                    assert_eq!(*b, e == j, "k={k} j={j} eye={e}");
                }
            }
        }
    }

    #[test]
    fn padding_appends_a_zero_component() {
        let sys = text::key_example();
        let padded = pad_with_trivial_eyes(&sys, 2);
        assert_eq!(i_of(&padded), [true, false, false]);
    }

    #[test]
    fn concatenation_is_additive_on_the_examples() {
        let key = text::key_example();
        let std = text::standard_example();
        assert_eq!(i_of(&concatenate(&key, &key).unwrap()), [false]);
        assert_eq!(i_of(&concatenate(&key, &std).unwrap()), [true]);
        assert_eq!(i_of(&concatenate(&std, &std).unwrap()), [false]);
        // A * empty is A up to naming.
        let empty = System::standard(&[0]);
        let glued = concatenate(&key, &empty).unwrap();
        assert_eq!(i_of(&glued), [true]);
    }

    #[test]
    fn slide_to_ea_clears_one_excess_crossing_with_one_swing() {
        let mut sys = System::standard(&[2]);
        let f1 = sys.disc_by_name("f1").unwrap();
        let w2 = sys.disc_by_name("w2").unwrap();
        sys.xg_mut().set(f1.0, w2.0, 1);
        let (ea, script) = slide_to_ea(&sys).unwrap();
        assert_eq!(ea.classify(0).unwrap(), crate::system::Position::Ea);
        assert_eq!(script.len(), 1);
        assert!(matches!(&script[0], Move::Swing { mover, target, .. }
            if mover == "w2" && target == "f1"));
        // The red side was clear, so the hat invariant is untouched.
        assert_eq!(hat_i(&ea).unwrap(), hat_i(&sys).unwrap());
        // A red-embedded input used no red swings.
        assert!(script.iter().all(|m| matches!(m, Move::Swing { surface: crate::moves::Surface::G, .. })));
    }

    #[test]
    fn invariance_under_each_move_kind_on_the_key_example() {
        let key = text::key_example();
        let base = i_of(&key);
        let moves_to_try: Vec<Move> = alloc::vec![
            Move::Birth { eye: 0 },
            Move::Saddle { eye: 0, x: 0, y: 1 },
            Move::X3 { eye: 0, at: 0 },
            Move::X3 { eye: 0, at: 1 },
            Move::X3 { eye: 0, at: 2 },
            Move::Rotate { disc: "w1".into(), surface: crate::moves::Surface::G, corner: 1, sign: 1 },
            Move::Rotate { disc: "f1".into(), surface: crate::moves::Surface::R, corner: 0, sign: 1 },
        ];
        for mv in moves_to_try {
            let out = moves::apply(&key, &mv).unwrap();
            assert_eq!(i_of(&out), base, "{}", text::serialize_move(&mv));
        }
    }

    #[test]
    fn invariance_under_slides_with_red_crossings_present() {
        // A slide whose over-disc has red crossings changes hat_I but not I.
        let mut sys = System::standard(&[2]);
        let f1 = sys.disc_by_name("f1").unwrap();
        let w1 = sys.disc_by_name("w1").unwrap();
        let w2 = sys.disc_by_name("w2").unwrap();
        sys.m_mut().set(f1.0, w1.0, true);
        sys.xr_mut().set(f1.0, w2.0, 1);
        let base = i_of(&sys);
        let mv = Move::Slide {
            surface: crate::moves::Surface::G,
            mover: "w1".into(),
            over: "w2".into(),
            twist: 0,
            path: PathSpec::clear(),
        };
        let out = moves::apply(&sys, &mv).unwrap();
        assert_eq!(i_of(&out), base);
    }

    #[test]
    fn parity_hypotheses_examples() {
        let sys = text::key_example();
        assert!(parity_hypotheses(&sys, &sys).unwrap());
        let mut off = sys.clone();
        let f1 = off.disc_by_name("f1").unwrap();
        let w1 = off.disc_by_name("w1").unwrap();
        off.xg_mut().set(f1.0, w1.0, 1);
        assert!(!parity_hypotheses(&sys, &off).unwrap());
        // Doubly shifted crossings keep the hypotheses.
        let mut even = sys.clone();
        even.xg_mut().set(f1.0, w1.0, 2);
        assert!(parity_hypotheses(&sys, &even).unwrap());
    }
}
