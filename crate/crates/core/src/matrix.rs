//! Small symmetric matrices over Z2 and over the nonnegative integers, indexed
//! by disc slots. Zero diagonal is maintained by ignoring (i, i) writes.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymBits {
    n: usize,
    rows: Vec<Vec<bool>>,
}

impl SymBits {
    pub fn new(n: usize) -> Self {
        SymBits { n, rows: vec![vec![false; n]; n] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        if i == j {
            return;
        }
        self.rows[i][j] = v;
        self.rows[j][i] = v;
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        let v = !self.get(i, j);
        self.set(i, j, v);
    }

    pub fn add(&mut self, i: usize, j: usize, v: bool) {
        if v {
            self.flip(i, j);
        }
    }

    pub fn push_slot(&mut self) -> usize {
        for row in &mut self.rows {
            row.push(false);
        }
        self.n += 1;
        self.rows.push(vec![false; self.n]);
        self.n - 1
    }

    pub fn remove_slots(&mut self, kill: &[usize]) {
        let keep: Vec<usize> = (0..self.n).filter(|i| !kill.contains(i)).collect();
        let mut rows = vec![vec![false; keep.len()]; keep.len()];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                rows[a][b] = self.rows[i][j];
            }
        }
        self.n = keep.len();
        self.rows = rows;
    }

    pub fn zero_row(&mut self, i: usize) {
        for j in 0..self.n {
            self.set(i, j, false);
        }
    }

    /// Copies row `src` onto row `dst` (off-diagonal entries, symmetric).
    pub fn copy_row(&mut self, src: usize, dst: usize) {
        let vals: Vec<bool> = (0..self.n).map(|j| self.get(src, j)).collect();
        for (j, v) in vals.into_iter().enumerate() {
            if j != dst {
                self.set(dst, j, v);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymCounts {
    n: usize,
    rows: Vec<Vec<u32>>,
}

impl SymCounts {
    pub fn new(n: usize) -> Self {
        SymCounts { n, rows: vec![vec![0; n]; n] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 0;
        }
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        if i == j {
            return;
        }
        self.rows[i][j] = v;
        self.rows[j][i] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: u32) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    /// Subtracts, saturating at zero would hide bugs; panics on underflow.
    pub fn sub(&mut self, i: usize, j: usize, v: u32) {
        let cur = self.get(i, j);
        assert!(cur >= v, "crossing count underflow");
        self.set(i, j, cur - v);
    }

    pub fn push_slot(&mut self) -> usize {
        for row in &mut self.rows {
            row.push(0);
        }
        self.n += 1;
        self.rows.push(vec![0; self.n]);
        self.n - 1
    }

    pub fn remove_slots(&mut self, kill: &[usize]) {
        let keep: Vec<usize> = (0..self.n).filter(|i| !kill.contains(i)).collect();
        let mut rows = vec![vec![0; keep.len()]; keep.len()];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                rows[a][b] = self.rows[i][j];
            }
        }
        self.n = keep.len();
        self.rows = rows;
    }

    pub fn zero_row(&mut self, i: usize) {
        for j in 0..self.n {
            self.set(i, j, 0);
        }
    }

    pub fn row_sum(&self, i: usize) -> u32 {
        (0..self.n).map(|j| self.get(i, j)).sum()
    }
}
