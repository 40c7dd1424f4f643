//! Hamiltonian-adaptive ternary tree construction.
//!
//! The tree is grown bottom-up. The frontier starts as the `2N + 1` leaves;
//! step `i` picks three frontier nodes, hangs them under internal node
//! `2N + 1 + i` (qubit `i`) as its X, Y and Z children, and replaces them with
//! that node. Every Hamiltonian term is tracked as the set of frontier nodes
//! whose strings it multiplies; since the children's strings differ only on
//! qubit `i`, a term touching `k` of the three children picks up a non-identity
//! operator on qubit `i` exactly when `k ∈ {1, 2}` (for `k = 3`, `XYZ ∝ I`).
//! The selection minimising that count is taken greedily.
//!
//! Two scans are available:
//!
//! * [`Variant::Unopt`] tries every triple of frontier nodes.
//! * [`Variant::Paired`] tries ordered pairs `(O_X, O_Z)` and derives `O_Y`
//!   so that the Z-descendant leaves of the X and Y children are Majorana
//!   partners `2l` and `2l + 1`. This makes every pair `(S_{2l}, S_{2l+1})`
//!   differ by an `(X, Y)` on one qubit and by `Z`/`I` elsewhere, so the
//!   mapping preserves the vacuum. With [`Traversal::Maps`] the partner lookup
//!   is O(1) through [`DescMaps`]; [`Traversal::Explicit`] walks the tree.
//!
//! Ties are broken by the smallest scan key: `(O_X, O_Z)` for the paired scan
//! and the sorted triple for the exhaustive one.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fermion::MajoranaHamiltonian;
use crate::mapping::{Mapping, Method};
use crate::pauli::PauliString;
use crate::tree::{DescMaps, TernaryTree};

/// One Hamiltonian term as the set of current frontier nodes it multiplies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedTerm {
    /// Sorted, no repeats.
    pub nodes: Vec<usize>,
    pub original_index: usize,
}

/// The Hamiltonian rewritten over the frontier. Coefficients are irrelevant
/// to the weight objective and are not kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedHamiltonian {
    pub terms: Vec<ReducedTerm>,
    pub n_alive: usize,
}

impl ReducedHamiltonian {
    /// Initial form: each monomial's Majorana indices are leaf ids.
    pub fn from_majorana(h: &MajoranaHamiltonian) -> Self {
        let terms = h
            .terms()
            .iter()
            .enumerate()
            .map(|(i, t)| ReducedTerm { nodes: t.indices.clone(), original_index: i })
            .collect();
        Self { terms, n_alive: 2 * h.n_modes() + 1 }
    }

    /// Number of terms that end up with a non-identity operator on the new
    /// qubit if `sel` become its X, Y and Z children.
    pub fn weight_on_qubit(&self, sel: [usize; 3]) -> usize {
        self.terms
            .iter()
            .filter(|t| {
                let k = sel.iter().filter(|s| t.nodes.binary_search(s).is_ok()).count();
                k == 1 || k == 2
            })
            .count()
    }

    /// Replaces `sel` by `new_id`: the selected nodes drop out of every term
    /// and `new_id` enters those with an odd number of them.
    pub fn reduce(&self, sel: [usize; 3], new_id: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| ReducedTerm { nodes: reduce_nodes(&t.nodes, sel, new_id), original_index: t.original_index })
            .collect();
        Self { terms, n_alive: self.n_alive - 2 }
    }
}

fn reduce_nodes(nodes: &[usize], sel: [usize; 3], new_id: usize) -> Vec<usize> {
    let hits = nodes.iter().filter(|n| sel.contains(n)).count();
    let mut out: Vec<usize> = nodes.iter().copied().filter(|n| !sel.contains(n)).collect();
    if hits % 2 == 1 {
        let pos = out.partition_point(|&n| n < new_id);
        out.insert(pos, new_id);
    }
    out
}

/// Chosen X, Y and Z children and the resulting weight on the new qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Selection {
    #[serde(rename = "x")]
    pub ox: usize,
    #[serde(rename = "y")]
    pub oy: usize,
    #[serde(rename = "z")]
    pub oz: usize,
    pub weight: usize,
}

impl Selection {
    pub fn nodes(&self) -> [usize; 3] {
        [self.ox, self.oy, self.oz]
    }
}

/// How partner lookups are done in the paired scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    /// O(1) lookups through [`DescMaps`].
    Maps,
    /// Walk Z children down and parents up.
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Unopt,
    Paired(Traversal),
}

/// Why a paired-scan candidate `(O_X, O_Z)` was skipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Discard {
    /// `desc_Z(O_X)` is leaf `2N`, which has no partner.
    RightmostLeaf,
    /// The partner's frontier ancestor is `O_X` or `O_Z` itself.
    Collision,
}

/// A paired-scan candidate as enumerated, before or after resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub scan_x: usize,
    pub scan_z: usize,
    pub outcome: std::result::Result<Selection, Discard>,
}

/// One construction step, as written to the trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    #[serde(flatten)]
    pub selection: Selection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub variant: Variant,
    /// Worker threads for the candidate scan; `0` or `1` scans serially.
    pub threads: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self { variant: Variant::Paired(Traversal::Maps), threads: 1 }
    }
}

/// Per-node term incidence over the frontier.
#[derive(Debug, Clone)]
struct TermIndex {
    terms: Vec<Vec<usize>>,
    incidence: Vec<Vec<u32>>,
}

impl TermIndex {
    fn new(reduced: &ReducedHamiltonian, n_nodes: usize) -> Self {
        let mut incidence = vec![Vec::new(); n_nodes];
        let terms: Vec<Vec<usize>> = reduced.terms.iter().map(|t| t.nodes.clone()).collect();
        for (ti, t) in terms.iter().enumerate() {
            for &n in t {
                incidence[n].push(ti as u32);
            }
        }
        Self { terms, incidence }
    }

    fn degree(&self, node: usize) -> u32 {
        self.incidence[node].len() as u32
    }

    /// Adds the co-occurrence counts of `node` into `row`; `sign` is +1 or -1
    /// (the latter restores a zeroed row).
    fn scatter(&self, node: usize, row: &mut [i64], sign: i64) {
        for &ti in &self.incidence[node] {
            for &m in &self.terms[ti as usize] {
                if m != node {
                    row[m] += sign;
                }
            }
        }
    }

    fn apply(&mut self, sel: [usize; 3], new_id: usize) {
        let mut affected: Vec<u32> = sel.iter().flat_map(|&s| self.incidence[s].iter().copied()).collect();
        affected.sort_unstable();
        affected.dedup();
        for &s in &sel {
            self.incidence[s].clear();
        }
        for ti in affected {
            let t = &mut self.terms[ti as usize];
            let next = reduce_nodes(t, sel, new_id);
            if next.binary_search(&new_id).is_ok() {
                self.incidence[new_id].push(ti);
            }
            *t = next;
        }
    }

    fn reduced(&self, n_alive: usize) -> ReducedHamiltonian {
        ReducedHamiltonian {
            terms: self
                .terms
                .iter()
                .enumerate()
                .map(|(i, nodes)| ReducedTerm { nodes: nodes.clone(), original_index: i })
                .collect(),
            n_alive,
        }
    }
}

/// Scan key ordering: weight first, then the tie-break tuple.
type Best = Option<(usize, [usize; 3], Selection)>;

fn better(a: Best, b: Best) -> Best {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(p), Some(q)) => Some(if (q.0, q.1) < (p.0, p.1) { q } else { p }),
    }
}

/// Step-by-step tree construction.
#[derive(Debug, Clone)]
pub struct HattBuilder {
    n_modes: usize,
    options: Options,
    tree: TernaryTree,
    frontier: Vec<usize>,
    in_frontier: Vec<bool>,
    paired: Vec<bool>,
    maps: DescMaps,
    index: TermIndex,
    history: Vec<StepRecord>,
}

impl HattBuilder {
    pub fn new(h: &MajoranaHamiltonian, options: Options) -> Result<Self> {
        let n = h.n_modes();
        if n == 0 {
            return Err(Error::InvalidArgument("tree construction needs at least one mode".into()));
        }
        let tree = TernaryTree::forest(n);
        let n_leaves = tree.n_leaves();
        let mut in_frontier = vec![false; tree.n_nodes()];
        in_frontier[..n_leaves].iter_mut().for_each(|f| *f = true);
        let reduced = ReducedHamiltonian::from_majorana(h);
        Ok(Self {
            n_modes: n,
            options,
            index: TermIndex::new(&reduced, tree.n_nodes()),
            frontier: (0..n_leaves).collect(),
            in_frontier,
            paired: vec![false; n_leaves],
            maps: DescMaps::new(n),
            tree,
            history: Vec::new(),
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Index of the next step, `0..N`.
    pub fn step_index(&self) -> usize {
        self.history.len()
    }

    pub fn is_done(&self) -> bool {
        self.history.len() == self.n_modes
    }

    /// Current frontier, ascending.
    pub fn frontier(&self) -> &[usize] {
        &self.frontier
    }

    pub fn tree(&self) -> &TernaryTree {
        &self.tree
    }

    pub fn history(&self) -> &[StepRecord] {
        &self.history
    }

    /// The Hamiltonian over the current frontier.
    pub fn reduced(&self) -> ReducedHamiltonian {
        self.index.reduced(self.frontier.len())
    }

    /// Leaves not yet paired with their Majorana partner.
    pub fn unpaired_leaves(&self) -> Vec<usize> {
        (0..self.paired.len()).filter(|&l| !self.paired[l]).collect()
    }

    fn desc_z(&self, node: usize) -> usize {
        match self.options.variant {
            Variant::Paired(Traversal::Maps) => self.maps.down(node).expect("frontier node has a Z-descendant"),
            _ => self.tree.desc_z(node),
        }
    }

    /// Frontier ancestor of `leaf`.
    fn frontier_ancestor(&self, leaf: usize) -> usize {
        match self.options.variant {
            Variant::Paired(Traversal::Maps) => self.maps.up(leaf).expect("unpaired leaf has a frontier ancestor"),
            _ => {
                let mut o = leaf;
                while !self.in_frontier[o] {
                    o = self.tree.parent(o).expect("every leaf reaches the frontier").0;
                }
                o
            }
        }
    }

    fn resolve(&self, scan_x: usize, scan_z: usize) -> std::result::Result<[usize; 3], Discard> {
        let x = self.desc_z(scan_x);
        if x == 2 * self.n_modes {
            return Err(Discard::RightmostLeaf);
        }
        let oy = self.frontier_ancestor(x ^ 1);
        if oy == scan_x || oy == scan_z {
            return Err(Discard::Collision);
        }
        // keep the even leaf on the X side
        Ok(if x.is_multiple_of(2) { [scan_x, oy, scan_z] } else { [oy, scan_x, scan_z] })
    }

    /// `|A| + |B| + |C| - |A∩B| - |A∩C| - |B∩C|` over the per-node term sets,
    /// which counts the terms meeting the triple once or twice.
    fn weight(&self, [a, b, c]: [usize; 3]) -> usize {
        let mut row_a = vec![0i64; self.tree.n_nodes()];
        let mut row_b = vec![0i64; self.tree.n_nodes()];
        self.index.scatter(a, &mut row_a, 1);
        self.index.scatter(b, &mut row_b, 1);
        let deg = |n: usize| i64::from(self.index.degree(n));
        (deg(a) + deg(b) + deg(c) - row_a[b] - row_a[c] - row_b[c]) as usize
    }

    /// Every ordered `(O_X, O_Z)` pair of the paired scan with its outcome.
    pub fn candidates(&self) -> Vec<Candidate> {
        let mut out = Vec::new();
        for &sx in &self.frontier {
            for &sz in &self.frontier {
                if sx == sz {
                    continue;
                }
                let outcome = self.resolve(sx, sz).map(|sel| {
                    let [ox, oy, oz] = sel;
                    Selection { ox, oy, oz, weight: self.weight(sel) }
                });
                out.push(Candidate { scan_x: sx, scan_z: sz, outcome });
            }
        }
        out
    }

    fn scan_paired_from(&self, sx: usize, row: &mut [i64]) -> Best {
        let x = self.desc_z(sx);
        if x == 2 * self.n_modes {
            return None;
        }
        let oy = self.frontier_ancestor(x ^ 1);
        if oy == sx {
            return None;
        }
        let (ox, oy) = if x.is_multiple_of(2) { (sx, oy) } else { (oy, sx) };
        self.index.scatter(ox, row, 1);
        let pair_xy = row[oy];
        self.index.scatter(oy, row, 1);
        let base = i64::from(self.index.degree(ox)) + i64::from(self.index.degree(oy)) - pair_xy;
        let mut best: Best = None;
        for &sz in &self.frontier {
            if sz == sx || sz == ox || sz == oy {
                continue;
            }
            let w = (base + i64::from(self.index.degree(sz)) - row[sz]) as usize;
            let cand = Some((w, [sx, sz, 0], Selection { ox, oy, oz: sz, weight: w }));
            best = better(best, cand);
        }
        self.index.scatter(ox, row, -1);
        self.index.scatter(oy, row, -1);
        best
    }

    fn scan_unopt_from(&self, ai: usize, row_a: &mut [i64], row_b: &mut [i64]) -> Best {
        let f = &self.frontier;
        let a = f[ai];
        self.index.scatter(a, row_a, 1);
        let mut best: Best = None;
        for bi in ai + 1..f.len() {
            let b = f[bi];
            self.index.scatter(b, row_b, 1);
            let base = i64::from(self.index.degree(a)) + i64::from(self.index.degree(b)) - row_a[b];
            for &c in &f[bi + 1..] {
                let w = (base + i64::from(self.index.degree(c)) - row_a[c] - row_b[c]) as usize;
                best = better(best, Some((w, [a, b, c], Selection { ox: a, oy: b, oz: c, weight: w })));
            }
            self.index.scatter(b, row_b, -1);
        }
        self.index.scatter(a, row_a, -1);
        best
    }

    /// Minimum-weight selection for the current step.
    pub fn best_selection(&self) -> Result<Selection> {
        let n_nodes = self.tree.n_nodes();
        let len = self.frontier.len();
        let serial = self.options.threads <= 1;
        let best = match self.options.variant {
            Variant::Unopt => {
                let run = |ai: usize, rows: &mut (Vec<i64>, Vec<i64>)| self.scan_unopt_from(ai, &mut rows.0, &mut rows.1);
                if serial {
                    let mut rows = (vec![0; n_nodes], vec![0; n_nodes]);
                    (0..len).fold(None, |acc, ai| better(acc, run(ai, &mut rows)))
                } else {
                    self.pool()?.install(|| {
                        (0..len)
                            .into_par_iter()
                            .map_init(|| (vec![0; n_nodes], vec![0; n_nodes]), |rows, ai| run(ai, rows))
                            .reduce(|| None, better)
                    })
                }
            }
            Variant::Paired(_) => {
                let run = |i: usize, row: &mut Vec<i64>| self.scan_paired_from(self.frontier[i], row);
                if serial {
                    let mut row = vec![0; n_nodes];
                    (0..len).fold(None, |acc, i| better(acc, run(i, &mut row)))
                } else {
                    self.pool()?.install(|| {
                        (0..len)
                            .into_par_iter()
                            .map_init(|| vec![0; n_nodes], |row, i| run(i, row))
                            .reduce(|| None, better)
                    })
                }
            }
        };
        best.map(|b| b.2).ok_or_else(|| {
            Error::Construction(format!("no feasible selection at step {}", self.step_index()))
        })
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.options.threads)
            .build()
            .map_err(|e| Error::Construction(format!("thread pool: {e}")))
    }

    /// Grows the next internal node over `sel`.
    pub fn apply(&mut self, sel: Selection) -> Result<StepRecord> {
        if self.is_done() {
            return Err(Error::Construction("all qubits already placed".into()));
        }
        let nodes = sel.nodes();
        if nodes.iter().any(|&n| !self.in_frontier[n]) {
            return Err(Error::Construction(format!("selection {nodes:?} is not in the frontier")));
        }
        let step = self.step_index();
        let new_id = self.tree.internal_id(step);
        if let Variant::Paired(_) = self.options.variant {
            let (x, y) = (self.desc_z(sel.ox), self.desc_z(sel.oy));
            if x % 2 != 0 || y != x + 1 || self.paired[x] || self.paired[y] {
                return Err(Error::Construction(format!(
                    "selection {nodes:?} does not pair an unpaired even/odd leaf couple"
                )));
            }
            self.paired[x] = true;
            self.paired[y] = true;
        }
        self.tree.attach(new_id, nodes)?;
        self.maps.update(new_id, nodes);
        self.index.apply(nodes, new_id);
        for n in nodes {
            self.in_frontier[n] = false;
        }
        self.frontier.retain(|n| !nodes.contains(n));
        self.frontier.push(new_id);
        self.in_frontier[new_id] = true;
        let record = StepRecord { step, selection: sel };
        self.history.push(record);
        Ok(record)
    }

    /// Chooses and applies the best selection.
    pub fn step(&mut self) -> Result<StepRecord> {
        let sel = self.best_selection()?;
        self.apply(sel)
    }

    pub fn run(mut self) -> Result<(Mapping, Vec<StepRecord>)> {
        while !self.is_done() {
            self.step()?;
        }
        let history = self.history.clone();
        Ok((self.finish()?, history))
    }

    /// Builds the mapping from a finished tree; leaf `2N` is dropped.
    pub fn finish(self) -> Result<Mapping> {
        if !self.is_done() {
            return Err(Error::Construction(format!("only {} of {} steps done", self.step_index(), self.n_modes)));
        }
        let root = self.tree.root()?;
        let (method, vacuum) = match self.options.variant {
            Variant::Unopt => (Method::HattUnopt, false),
            Variant::Paired(_) => {
                let leftover = self.tree.desc_z(root);
                if leftover != 2 * self.n_modes {
                    return Err(Error::Construction(format!("unpaired leaf is {leftover}, expected {}", 2 * self.n_modes)));
                }
                (Method::Hatt, true)
            }
        };
        let mut strings = walk_tree(&self.tree)?;
        strings.truncate(2 * self.n_modes);
        Ok(Mapping::new(self.n_modes, method, vacuum, strings)?.with_tree(self.tree))
    }
}

/// Root-to-leaf strings indexed by leaf id.
pub fn walk_tree(tree: &TernaryTree) -> Result<Vec<PauliString>> {
    tree.extract_strings()
}

/// Exhaustive-triple construction without pairing.
pub fn build_unopt(h: &MajoranaHamiltonian) -> Result<Mapping> {
    build_with(h, Options { variant: Variant::Unopt, threads: 1 }).map(|r| r.0)
}

/// Vacuum-preserving construction with O(1) partner lookups.
pub fn build(h: &MajoranaHamiltonian) -> Result<Mapping> {
    build_with(h, Options::default()).map(|r| r.0)
}

pub fn build_with(h: &MajoranaHamiltonian, options: Options) -> Result<(Mapping, Vec<StepRecord>)> {
    HattBuilder::new(h, options)?.run()
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::fermion::parse_fermionic;

    fn three_mode() -> MajoranaHamiltonian {
        parse_fermionic("modes 3\n(1,0) : 0^ 0\n(2,0) : 1^ 2^ 1 2\n").unwrap().to_majorana()
    }

    fn reduced_three_mode() -> ReducedHamiltonian {
        ReducedHamiltonian::from_majorana(&three_mode())
    }

    #[test]
    fn step_zero_weight() {
        let r = reduced_three_mode();
        assert_eq!(r.weight_on_qubit([0, 1, 6]), 1);
        assert_eq!(ReducedHamiltonian { terms: vec![], n_alive: 7 }.weight_on_qubit([0, 1, 6]), 0);
    }

    #[test]
    fn reduce_examples() {
        let r = reduced_three_mode().reduce([0, 1, 6], 7);
        let sets: Vec<Vec<usize>> = r.terms.iter().map(|t| t.nodes.clone()).collect();
        assert_eq!(sets, vec![vec![], vec![2, 3], vec![2, 3, 4, 5], vec![4, 5]]);
        assert_eq!(r.n_alive, 5);
        assert_eq!(r.weight_on_qubit([2, 3, 7]), 2);
        assert_eq!(reduce_nodes(&[0, 2], [0, 1, 6], 7), vec![2, 7]);
    }

    #[test]
    fn worked_example_paired() {
        let mut b = HattBuilder::new(&three_mode(), Options::default()).unwrap();
        let s0 = b.step().unwrap();
        assert_eq!((s0.selection.nodes(), s0.selection.weight), ([0, 1, 6], 1));

        let cands = b.candidates();
        let find = |x, z| cands.iter().find(|c| c.scan_x == x && c.scan_z == z).unwrap().outcome;
        assert_eq!(find(7, 2), Err(Discard::RightmostLeaf));
        let ok = find(2, 7).unwrap();
        assert_eq!((ok.nodes(), ok.weight), ([2, 3, 7], 2));
        let s1 = b.step().unwrap();
        assert_eq!(s1.selection.weight, 2);
        assert_eq!(&s1.selection.nodes()[..2], &[2, 3]);

        b.step().unwrap();
        let m = b.finish().unwrap();
        assert!(m.vacuum_preserving());
        let s = m.strings();
        assert_eq!((s[0].get(0), s[1].get(0)), (crate::pauli::Pauli::X, crate::pauli::Pauli::Y));
        assert_eq!((s[2].get(1), s[3].get(1)), (crate::pauli::Pauli::X, crate::pauli::Pauli::Y));
    }

    #[test]
    fn unopt_picks_first_minimum() {
        let mut b = HattBuilder::new(&three_mode(), Options { variant: Variant::Unopt, threads: 1 }).unwrap();
        let s0 = b.step().unwrap();
        assert_eq!((s0.selection.nodes(), s0.selection.weight), ([0, 1, 6], 1));
    }

    #[test]
    fn one_mode_is_trivial() {
        let h = MajoranaHamiltonian::from_products(1, [(Complex64::new(0.0, 1.0), vec![0, 1])]).unwrap();
        for m in [build(&h).unwrap(), build_unopt(&h).unwrap()] {
            let d: Vec<String> = m.strings().iter().map(PauliString::to_dense).collect();
            assert_eq!(d, ["X", "Y"]);
        }
    }

    #[test]
    fn empty_hamiltonian_gives_fixed_tree() {
        let h = MajoranaHamiltonian::empty(4);
        let a = build(&h).unwrap();
        let b = build(&h).unwrap();
        assert_eq!(a, b);
        assert!(a.vacuum_preserving());
        assert_eq!(build_unopt(&h).unwrap(), build_unopt(&h).unwrap());
    }

    #[test]
    fn index_weight_matches_direct_count() {
        let b = {
            let mut b = HattBuilder::new(&three_mode(), Options::default()).unwrap();
            b.step().unwrap();
            b
        };
        let r = b.reduced();
        let f = b.frontier().to_vec();
        for &x in &f {
            for &y in &f {
                for &z in &f {
                    if x != y && y != z && x != z {
                        assert_eq!(b.weight([x, y, z]), r.weight_on_qubit([x, y, z]));
                    }
                }
            }
        }
    }

    #[test]
    fn maps_and_explicit_traversal_agree() {
        let h = three_mode();
        let a = build_with(&h, Options { variant: Variant::Paired(Traversal::Maps), threads: 1 }).unwrap();
        let b = build_with(&h, Options { variant: Variant::Paired(Traversal::Explicit), threads: 1 }).unwrap();
        assert_eq!(a.0.tree(), b.0.tree());
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn parallel_scan_is_deterministic() {
        let h = crate::fermion::gen_fermi_hubbard(2, 3, 1.0, 4.0, false).unwrap().to_majorana();
        for variant in [Variant::Unopt, Variant::Paired(Traversal::Maps)] {
            let serial = build_with(&h, Options { variant, threads: 1 }).unwrap();
            let par = build_with(&h, Options { variant, threads: 4 }).unwrap();
            assert_eq!(serial.0, par.0);
            assert_eq!(serial.1, par.1);
        }
    }

    #[test]
    fn rejects_bad_selection() {
        let mut b = HattBuilder::new(&three_mode(), Options::default()).unwrap();
        // 0 and 2 are not partners
        assert!(b.apply(Selection { ox: 0, oy: 2, oz: 6, weight: 0 }).is_err());
        assert!(b.apply(Selection { ox: 0, oy: 1, oz: 9, weight: 0 }).is_err());
    }
}
