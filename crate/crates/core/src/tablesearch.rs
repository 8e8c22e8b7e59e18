//! Exhaustive backtracking enumeration of all (add, mul) operation-table
//! pairs on `n` labels that satisfy every field axiom, with labels 0 and 1
//! pinned as the identities, plus table-isomorphism testing.
//!
//! The primary pruning rule is the sudoku constraint: rows and columns of
//! the addition table are permutations of all labels, and nonzero rows and
//! columns of the multiplication table are permutations of the nonzero
//! labels. Associativity and distributivity are checked incrementally on
//! completed triples, and every emitted solution is re-verified in full.

use crate::gfield::{verify_field_axioms, OpTablePair};
use serde::Serialize;
use thiserror::Error;

pub const MAX_ORDER: usize = 7;
pub const MAX_EXTENDED_ORDER: usize = 12;

const UNSET: usize = usize::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("table size {0} outside the supported range [2, {1}]")]
    OrderOutOfRange(usize, usize),
    #[error("tables have different sizes")]
    SizeMismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub size: usize,
    pub solutions: Vec<OpTablePair>,
    pub raw_count: usize,
    pub iso_classes: usize,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Stop after this many solutions, if set.
    pub max_solutions: Option<usize>,
    /// Try candidate labels in descending instead of ascending order.
    /// The sorted solution list must not depend on this.
    pub reversed_branching: bool,
    /// Permit sizes up to [`MAX_EXTENDED_ORDER`] instead of [`MAX_ORDER`].
    pub allow_extended: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_solutions: None,
            reversed_branching: false,
            allow_extended: false,
        }
    }
}

/// All field-table pairs on `2 <= n <= 7` labels (up to 12 with
/// `allow_extended`), sorted lexicographically.
pub fn enumerate_field_tables(n: usize) -> Result<SearchResult, SearchError> {
    enumerate_field_tables_with(n, SearchOptions::default())
}

pub fn enumerate_field_tables_with(
    n: usize,
    opts: SearchOptions,
) -> Result<SearchResult, SearchError> {
    let cap = if opts.allow_extended {
        MAX_EXTENDED_ORDER
    } else {
        MAX_ORDER
    };
    if n < 2 || n > cap {
        return Err(SearchError::OrderOutOfRange(n, cap));
    }

    let mut search = Search::new(n, opts);
    search.fill_add(0);

    let mut solutions = search.solutions;
    solutions.sort_by(|a, b| (&a.add, &a.mul).cmp(&(&b.add, &b.mul)));
    let raw_count = solutions.len();
    let iso_classes = count_iso_classes(&solutions);
    Ok(SearchResult {
        size: n,
        solutions,
        raw_count,
        iso_classes,
        nodes_explored: search.nodes,
    })
}

struct Search {
    n: usize,
    opts: SearchOptions,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    add_cells: Vec<(usize, usize)>,
    mul_cells: Vec<(usize, usize)>,
    /// Additive order of label 1 (the candidate characteristic), set once
    /// row 1 of the addition table is complete.
    char_candidate: usize,
    solutions: Vec<OpTablePair>,
    nodes: u64,
    done: bool,
}

impl Search {
    fn new(n: usize, opts: SearchOptions) -> Self {
        // row and column 0 of the addition table are forced by the identity
        let mut add = vec![vec![UNSET; n]; n];
        for j in 0..n {
            add[0][j] = j;
            add[j][0] = j;
        }
        // 0 absorbs and 1 is the identity in the multiplication table; the
        // zero row follows from distributivity and additive cancellation
        let mut mul = vec![vec![UNSET; n]; n];
        for j in 0..n {
            mul[0][j] = 0;
            mul[j][0] = 0;
            mul[1][j] = j;
            mul[j][1] = j;
        }
        let mut add_cells = Vec::new();
        for i in 1..n {
            for j in i..n {
                add_cells.push((i, j));
            }
        }
        let mut mul_cells = Vec::new();
        for i in 2..n {
            for j in i..n {
                mul_cells.push((i, j));
            }
        }
        Search {
            n,
            opts,
            add,
            mul,
            add_cells,
            mul_cells,
            char_candidate: 0,
            solutions: Vec::new(),
            nodes: 0,
            done: false,
        }
    }

    fn candidates(&self, used: u64) -> Vec<usize> {
        let mut c: Vec<usize> = (0..self.n).filter(|&v| used & (1 << v) == 0).collect();
        if self.opts.reversed_branching {
            c.reverse();
        }
        c
    }

    fn add_row_col_used(&self, i: usize, j: usize) -> u64 {
        let mut used = 0u64;
        for k in 0..self.n {
            for v in [self.add[i][k], self.add[k][j], self.add[j][k], self.add[k][i]] {
                if v != UNSET {
                    used |= 1 << v;
                }
            }
        }
        used
    }

    fn fill_add(&mut self, cell: usize) {
        if self.done {
            return;
        }
        if cell == self.add_cells.len() {
            self.fill_mul(0);
            return;
        }
        let (i, j) = self.add_cells[cell];
        let used = self.add_row_col_used(i, j);
        for v in self.candidates(used) {
            self.nodes += 1;
            self.add[i][j] = v;
            self.add[j][i] = v;
            if self.add_consistent(i, j) {
                self.fill_add(cell + 1);
            }
            self.add[i][j] = UNSET;
            self.add[j][i] = UNSET;
            if self.done {
                return;
            }
        }
    }

    /// Checks associativity on all fully-known triples, and additive-order
    /// constraints on any row completed by the assignment at (i, j).
    fn add_consistent(&mut self, i: usize, j: usize) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.add[a][b];
                if ab == UNSET {
                    continue;
                }
                for c in 0..n {
                    let bc = self.add[b][c];
                    if bc == UNSET {
                        continue;
                    }
                    let left = self.add[ab][c];
                    let right = self.add[a][bc];
                    if left != UNSET && right != UNSET && left != right {
                        return false;
                    }
                }
            }
        }
        // a row completes exactly when its last upper-triangle cell is set
        for row in [i, j] {
            if self.add[row].iter().all(|&v| v != UNSET) && !self.check_row_orders(row) {
                return false;
            }
        }
        true
    }

    /// In a field every nonzero element has the same prime additive order
    /// (x = x*1, so k*x = 0 iff k*1 = 0). The cycles of the permutation
    /// y -> y + x therefore all have that same length.
    fn check_row_orders(&mut self, row: usize) -> bool {
        if row == 0 {
            return true;
        }
        let cycle_len = |start: usize| {
            let mut y = self.add[row][start];
            let mut len = 1;
            while y != start {
                y = self.add[row][y];
                len += 1;
            }
            len
        };
        let order = cycle_len(0);
        if row == 1 {
            if !crate::polyring::is_prime(order as u64) || self.n % order != 0 {
                return false;
            }
            self.char_candidate = order;
        } else if order != self.char_candidate {
            return false;
        }
        // every cycle, not just the one through 0
        let mut seen = vec![false; self.n];
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut y = s;
            let mut len = 0;
            loop {
                seen[y] = true;
                y = self.add[row][y];
                len += 1;
                if y == s {
                    break;
                }
            }
            if len != self.char_candidate {
                return false;
            }
        }
        true
    }

    fn mul_row_col_used(&self, i: usize, j: usize) -> u64 {
        // label 0 never appears in nonzero rows: a product of nonzero
        // elements is nonzero in a field
        let mut used = 1u64;
        for k in 1..self.n {
            for v in [self.mul[i][k], self.mul[k][j], self.mul[j][k], self.mul[k][i]] {
                if v != UNSET {
                    used |= 1 << v;
                }
            }
        }
        used
    }

    fn fill_mul(&mut self, cell: usize) {
        if self.done {
            return;
        }
        if cell == self.mul_cells.len() {
            self.emit();
            return;
        }
        let (i, j) = self.mul_cells[cell];
        let used = self.mul_row_col_used(i, j);
        for v in self.candidates(used) {
            self.nodes += 1;
            self.mul[i][j] = v;
            self.mul[j][i] = v;
            if self.mul_consistent() {
                self.fill_mul(cell + 1);
            }
            self.mul[i][j] = UNSET;
            self.mul[j][i] = UNSET;
            if self.done {
                return;
            }
        }
    }

    /// Multiplicative associativity and distributivity on all fully-known
    /// triples. Triples involving 0 hold by the preset zero row.
    fn mul_consistent(&self) -> bool {
        let n = self.n;
        for a in 1..n {
            for b in 1..n {
                let ab = self.mul[a][b];
                for c in 1..n {
                    if ab != UNSET {
                        let bc = self.mul[b][c];
                        if bc != UNSET {
                            let left = self.mul[ab][c];
                            let right = self.mul[a][bc];
                            if left != UNSET && right != UNSET && left != right {
                                return false;
                            }
                        }
                    }
                    // a*(b+c) = a*b + a*c; the addition table is complete
                    let bc_sum = self.add[b][c];
                    let left = self.mul[a][bc_sum];
                    let right_1 = self.mul[a][b];
                    let right_2 = self.mul[a][c];
                    if left != UNSET
                        && right_1 != UNSET
                        && right_2 != UNSET
                        && left != self.add[right_1][right_2]
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn emit(&mut self) {
        let pair = OpTablePair {
            size: self.n,
            add: self.add.clone(),
            mul: self.mul.clone(),
        };
        // safety net: the incremental checks must have enforced everything
        let violations = verify_field_axioms(&pair).expect("well-shaped tables");
        assert!(
            violations.is_empty(),
            "search emitted a non-field table: {violations:?}"
        );
        self.solutions.push(pair);
        if let Some(max) = self.opts.max_solutions {
            if self.solutions.len() >= max {
                self.done = true;
            }
        }
    }
}

fn count_iso_classes(solutions: &[OpTablePair]) -> usize {
    let mut reps: Vec<&OpTablePair> = Vec::new();
    for s in solutions {
        if !reps
            .iter()
            .any(|r| tables_isomorphic(r, s).expect("equal sizes").is_some())
        {
            reps.push(s);
        }
    }
    reps.len()
}

/// Searches for a relabeling permutation carrying both tables of `t1` onto
/// `t2`, with 0 and 1 fixed. Backtracking over images with constraint
/// propagation; complete, so `None` means no isomorphism exists.
pub fn tables_isomorphic(
    t1: &OpTablePair,
    t2: &OpTablePair,
) -> Result<Option<Vec<usize>>, SearchError> {
    if t1.size != t2.size {
        return Err(SearchError::SizeMismatch);
    }
    let n = t1.size;
    let identity: Vec<usize> = (0..n).collect();
    if permutation_maps(t1, t2, &identity) {
        return Ok(Some(identity));
    }
    let mut sigma = vec![UNSET; n];
    let mut used = vec![false; n];
    sigma[0] = 0;
    sigma[1] = 1;
    used[0] = true;
    used[1] = true;
    if extend_iso(t1, t2, &mut sigma, &mut used) {
        Ok(Some(sigma))
    } else {
        Ok(None)
    }
}

fn permutation_maps(t1: &OpTablePair, t2: &OpTablePair, sigma: &[usize]) -> bool {
    let n = t1.size;
    for a in 0..n {
        for b in 0..n {
            if sigma[t1.add[a][b]] != t2.add[sigma[a]][sigma[b]]
                || sigma[t1.mul[a][b]] != t2.mul[sigma[a]][sigma[b]]
            {
                return false;
            }
        }
    }
    true
}

fn extend_iso(t1: &OpTablePair, t2: &OpTablePair, sigma: &mut [usize], used: &mut [bool]) -> bool {
    let n = t1.size;
    // propagate forced images until a fixpoint, remembering what we set so
    // the caller's state can be restored on failure
    let mut forced: Vec<usize> = Vec::new();
    loop {
        let mut changed = false;
        for a in 0..n {
            if sigma[a] == UNSET {
                continue;
            }
            for b in 0..n {
                if sigma[b] == UNSET {
                    continue;
                }
                for (s1, s2) in [(&t1.add, &t2.add), (&t1.mul, &t2.mul)] {
                    let c = s1[a][b];
                    let target = s2[sigma[a]][sigma[b]];
                    if sigma[c] == UNSET {
                        if used[target] {
                            undo(sigma, used, &forced);
                            return false;
                        }
                        sigma[c] = target;
                        used[target] = true;
                        forced.push(c);
                        changed = true;
                    } else if sigma[c] != target {
                        undo(sigma, used, &forced);
                        return false;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let next = (0..n).find(|&a| sigma[a] == UNSET);
    let Some(a) = next else {
        return true; // fixpoint verified every pair
    };
    for v in 0..n {
        if used[v] {
            continue;
        }
        sigma[a] = v;
        used[v] = true;
        if extend_iso(t1, t2, sigma, used) {
            return true;
        }
        sigma[a] = UNSET;
        used[v] = false;
    }
    undo(sigma, used, &forced);
    false
}

fn undo(sigma: &mut [usize], used: &mut [bool], forced: &[usize]) {
    for &c in forced {
        used[sigma[c]] = false;
        sigma[c] = UNSET;
    }
}
