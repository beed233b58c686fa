//! Isotopy classes of arcs on a 2-sphere with marked points on a reference
//! circle L (compactified through infinity), with minimal-position crossing
//! counts and Dehn twists. This is the geometric oracle layer used to
//! validate the axiomatic crossing deltas of the move engine on small
//! instances.
//!
//! The sphere is cut by L into two faces. An arc is stored as its cut
//! sequence: the list of gaps of L it crosses, together with the face it
//! departs into. Reduced words (no immediate re-crossing, no crossing of a
//! gap incident to an endpoint at the ends) are taut representatives; the
//! pairwise count then falls out of sorting the crossings along each gap and
//! counting interleaved chords face by face.

use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Face {
    U,
    D,
}

impl Face {
    pub fn flip(self) -> Face {
        match self {
            Face::U => Face::D,
            Face::D => Face::U,
        }
    }
}

/// Sphere with `points` marked points on the reference circle. Gap `i` runs
/// from point `i` to point `i + 1`, the last gap closing up through infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkedSphere {
    pub points: usize,
}

impl MarkedSphere {
    pub fn gaps(&self) -> usize {
        self.points
    }

    pub fn left_gap(&self, v: usize) -> usize {
        (v + self.points - 1) % self.points
    }

    pub fn right_gap(&self, v: usize) -> usize {
        v
    }

    fn incident(&self, gap: usize, v: usize) -> bool {
        gap == self.right_gap(v) || gap == self.left_gap(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub start: usize,
    pub end: usize,
    pub start_face: Face,
    word: Vec<usize>,
}

impl Arc {
    pub fn new(start: usize, end: usize, start_face: Face, word: Vec<usize>) -> Arc {
        Arc { start, end, start_face, word }
    }

    /// Arc hugging the upper face between two marked points.
    pub fn chord(a: usize, b: usize) -> Arc {
        Arc { start: a, end: b, start_face: Face::U, word: Vec::new() }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn is_reduced(&self) -> bool {
        // No immediate re-crossing of a gap.
        if self.word.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        true
    }

    fn face_of_strand(&self, t: usize) -> Face {
        if t % 2 == 0 {
            self.start_face
        } else {
            self.start_face.flip()
        }
    }

    /// Bigon reduction to minimal position: removes immediate re-crossings
    /// and pivots endpoint-adjacent crossings around the endpoints.
    pub fn reduce(&mut self, sphere: &MarkedSphere) {
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < self.word.len() {
                if self.word[i] == self.word[i + 1] {
                    self.word.drain(i..=i + 1);
                    changed = true;
                    if i > 0 {
                        i -= 1;
                    }
                } else {
                    i += 1;
                }
            }
            if let Some(&first) = self.word.first() {
                if sphere.incident(first, self.start) {
                    self.word.remove(0);
                    self.start_face = self.start_face.flip();
                    changed = true;
                }
            }
            if let Some(&last) = self.word.last() {
                if sphere.incident(last, self.end) {
                    self.word.pop();
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    pub fn reduced(mut self, sphere: &MarkedSphere) -> Arc {
        self.reduce(sphere);
        self
    }
}

/// Reduces every arc of a diagram; pairwise counts of reduced arcs are
/// minimal in their isotopy classes rel endpoints.
pub fn minimal_position(diagram: &mut [Arc], sphere: &MarkedSphere) {
    for a in diagram.iter_mut() {
        a.reduce(sphere);
    }
}

// --- crossing counting -----------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Vertex(usize),
    Passage(usize, usize), // (gap, rank along the gap from its low vertex)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Gap(usize),
    Endpoint(usize),
}

/// Trajectory step `off` positions after (dir = +1) or before (dir = -1) the
/// passage at word index `k` of `arc`.
fn step(arc: &Arc, k: isize, dir: isize, off: usize) -> Step {
    let pos = k + dir * (off as isize + 1);
    if pos < 0 {
        Step::Endpoint(arc.start)
    } else if pos as usize >= arc.word.len() {
        Step::Endpoint(arc.end)
    } else {
        Step::Gap(arc.word[pos as usize])
    }
}

/// Orders two passages through the same gap, from the gap's low-vertex end.
/// The order is pinned by walking the two trajectories in parallel until they
/// diverge; at the divergence, the strand exiting later around the face
/// boundary (cut at the shared gap) is the one nearer the low vertex, with
/// the relation flipping once per face traversed. Forward-undecided pairs
/// (trajectories ending together at a shared endpoint) fall back to the
/// backward walk; fully parallel passages order by arc and index.
fn before(
    arcs: [&Arc; 2],
    x: (usize, usize),
    y: (usize, usize),
    gap: usize,
    sphere: &MarkedSphere,
) -> bool {
    let m = sphere.points;
    for dir in [1isize, -1] {
        let mut off = 0;
        let mut cur_gap = gap;
        loop {
            let sx = step(arcs[x.0], x.1 as isize, dir, off);
            let sy = step(arcs[y.0], y.1 as isize, dir, off);
            match (sx, sy) {
                (Step::Gap(a), Step::Gap(b)) if a == b => {
                    cur_gap = a;
                    off += 1;
                    continue;
                }
                (Step::Endpoint(a), Step::Endpoint(b)) if a == b => break,
                _ => {
                    // Linearize the face boundary cut at the current shared
                    // gap, starting just past its high vertex.
                    let lin = |s: Step| -> usize {
                        let unit = match s {
                            Step::Gap(g) => 2 * g + 1,
                            Step::Endpoint(v) => 2 * v,
                        };
                        (unit + 4 * m - (2 * cur_gap + 2)) % (2 * m)
                    };
                    let nearer_here = lin(sx) > lin(sy);
                    // One flip per face traversed during the parallel walk.
                    return nearer_here ^ (off % 2 == 1);
                }
            }
        }
    }
    // Parallel in both directions: consistent arbitrary order.
    (x.0, x.1) < (y.0, y.1)
}

/// Boundary slots of each arc in order: start vertex, passages, end vertex.
fn slots(arcs: [&Arc; 2], sphere: &MarkedSphere) -> [Vec<Slot>; 2] {
    // Rank the passages within each gap.
    let mut per_gap: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); sphere.gaps()];
    for (ai, a) in arcs.iter().enumerate() {
        for (k, &g) in a.word.iter().enumerate() {
            per_gap[g].push((ai, k));
        }
    }
    let mut rank = alloc::collections::BTreeMap::new();
    for (g, list) in per_gap.iter().enumerate() {
        // Insertion sort with the geometric comparator.
        let mut sorted: Vec<(usize, usize)> = Vec::with_capacity(list.len());
        for &p in list {
            let mut at = sorted.len();
            for (i, &q) in sorted.iter().enumerate() {
                if before(arcs, p, q, g, sphere) {
                    at = i;
                    break;
                }
            }
            sorted.insert(at, p);
        }
        for (r, &(ai, k)) in sorted.iter().enumerate() {
            rank.insert((ai, k), r);
        }
    }
    let build = |ai: usize| -> Vec<Slot> {
        let a = arcs[ai];
        let mut v = Vec::with_capacity(a.word.len() + 2);
        v.push(Slot::Vertex(a.start));
        for (k, &g) in a.word.iter().enumerate() {
            v.push(Slot::Passage(g, rank[&(ai, k)]));
        }
        v.push(Slot::Vertex(a.end));
        v
    };
    [build(0), build(1)]
}

fn boundary_pos(s: Slot) -> (usize, usize) {
    match s {
        Slot::Vertex(v) => (2 * v, 0),
        Slot::Passage(g, r) => (2 * g + 1, r + 1),
    }
}

fn interleaved(p: (Slot, Slot), q: (Slot, Slot)) -> bool {
    // Chords sharing a vertex endpoint can always be combed apart there.
    for a in [p.0, p.1] {
        for b in [q.0, q.1] {
            if let (Slot::Vertex(x), Slot::Vertex(y)) = (a, b) {
                if x == y {
                    return false;
                }
            }
        }
    }
    let (p0, p1) = (boundary_pos(p.0), boundary_pos(p.1));
    let (q0, q1) = (boundary_pos(q.0), boundary_pos(q.1));
    let inside = |x: (usize, usize)| -> bool {
        // Strictly between p0 and p1 going cyclically from the smaller.
        let (lo, hi) = if p0 < p1 { (p0, p1) } else { (p1, p0) };
        x > lo && x < hi
    };
    inside(q0) != inside(q1)
}

/// Transverse interior crossings of two distinct reduced arcs in minimal
/// position; shared corners are not counted. Errors unless both arcs are in
/// minimal position (apply `minimal_position` first).
pub fn geometric_intersection(
    a: &Arc,
    b: &Arc,
    sphere: &MarkedSphere,
) -> crate::Result<usize> {
    if !a.is_reduced() || !b.is_reduced() {
        return Err(crate::Error::BadMove(alloc::string::String::from(
            "arcs are not reduced; apply minimal_position first",
        )));
    }
    Ok(crossings_on(a, b, sphere))
}

/// Crossing count of two arcs on the same sphere, taken over the taut
/// realization of their stored words.
pub fn crossings_on(a: &Arc, b: &Arc, sphere: &MarkedSphere) -> usize {
    let sl = slots([a, b], sphere);
    let mut count = 0;
    for ta in 0..sl[0].len() - 1 {
        for tb in 0..sl[1].len() - 1 {
            if a.face_of_strand(ta) != b.face_of_strand(tb) {
                continue;
            }
            if interleaved((sl[0][ta], sl[0][ta + 1]), (sl[1][tb], sl[1][tb + 1])) {
                count += 1;
            }
        }
    }
    count
}

// --- Dehn twists -------------------------------------------------------------

/// The simple closed curve enclosing exactly the marked points i ..= j,
/// with 0 < i < j < points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistCurve {
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Handedness {
    Left,
    Right,
}

impl Handedness {
    pub fn inverse(self) -> Handedness {
        match self {
            Handedness::Left => Handedness::Right,
            Handedness::Right => Handedness::Left,
        }
    }
}

impl TwistCurve {
    pub fn valid(&self, sphere: &MarkedSphere) -> bool {
        0 < self.i && self.i < self.j && self.j < sphere.points
    }

    fn encloses_vertex(&self, v: usize) -> bool {
        self.i <= v && v <= self.j
    }

    fn encloses_gap(&self, g: usize) -> bool {
        self.i <= g && g < self.j
    }

    fn inside(&self, s: Step) -> bool {
        match s {
            Step::Gap(g) => self.encloses_gap(g),
            Step::Endpoint(v) => self.encloses_vertex(v),
        }
    }
}

/// Image of an arc under the Dehn twist along γ: every strand crossing γ is
/// dragged once around the twist annulus, picking up a passage through each
/// of γ's two boundary gaps; the result is re-reduced.
pub fn dehn_twist(arc: &Arc, gamma: TwistCurve, hand: Handedness, sphere: &MarkedSphere) -> Arc {
    let gl = gamma.i - 1; // boundary gap on the low side
    let gh = gamma.j; // boundary gap on the high side
    let mut word = Vec::with_capacity(arc.word.len() + 4);
    let slot_at = |t: usize| -> Step {
        if t == 0 {
            Step::Endpoint(arc.start)
        } else if t > arc.word.len() {
            Step::Endpoint(arc.end)
        } else {
            Step::Gap(arc.word[t - 1])
        }
    };
    for t in 0..=arc.word.len() {
        let s1 = slot_at(t);
        let s2 = slot_at(t + 1);
        if gamma.inside(s1) != gamma.inside(s2) {
            let face = arc.face_of_strand(t);
            let first_high = (face == Face::U) == (hand == Handedness::Right);
            if first_high {
                word.push(gh);
                word.push(gl);
            } else {
                word.push(gl);
                word.push(gh);
            }
        }
        if let Step::Gap(g) = s2 {
            word.push(g);
        }
    }
    // The loop above appends the detour ahead of each crossing strand's
    // destination letter; the final strand's detour (if any) was pushed after
    // the last letter, which is exactly where it belongs.
    Arc { start: arc.start, end: arc.end, start_face: arc.start_face, word }.reduced(sphere)
}

// --- slide reroute -----------------------------------------------------------

/// The closed curve parallel to `over`'s arc rounding both corners, as a
/// cyclic word with the face of its first strand. Crosses each gap of
/// `over`'s word twice and one gap beyond each corner once.
fn parallel_loop(over: &Arc, sphere: &MarkedSphere) -> (Vec<usize>, Face) {
    let mut w = Vec::with_capacity(2 * over.word.len() + 2);
    w.extend_from_slice(&over.word);
    w.push(sphere.left_gap(over.end));
    w.extend(over.word.iter().rev());
    w.push(sphere.left_gap(over.start));
    (w, over.start_face)
}

/// Geometric disc slide on one sphere: band-sums `mover`'s arc with the
/// parallel loop of `over`'s arc, attaching along the mover's final strand.
pub fn slide_reroute(mover: &Arc, over: &Arc, sphere: &MarkedSphere) -> Arc {
    let (loop_word, loop_face) = parallel_loop(over, sphere);
    let entry_face = mover.face_of_strand(mover.word.len());
    let rot = if loop_face == entry_face { 0 } else { 1 };
    let mut word = mover.word.clone();
    for k in 0..loop_word.len() {
        word.push(loop_word[(rot + k) % loop_word.len()]);
    }
    Arc { start: mover.start, end: mover.end, start_face: mover.start_face, word }
        .reduced(sphere)
}
