//! Column abstraction over the bounded model search.
//!
//! A base assigns each world a slice: the set of (term, formula) pairs
//! placed there. Evaluation observes the base only through the evidence
//! bits of the target's Just subformulas, and those bits at a world are a
//! function of a single pair set: the world's own slice outside the j4
//! logics, or the union of slices along reverse accessibility (including
//! the world itself) in them, since evidence there is closed under
//! accessibility. The function itself is the one-world closure, so each
//! pair set maps to an evidence column computable by the real engine on a
//! one-world model with an empty relation.
//!
//! Satisfiability of a (world count, relation, valuation) point therefore
//! reduces to: does some achievable column vector make the abstract
//! evaluation true somewhere? Outside the j4 logics the worlds are
//! independent, so achievability is a per-column minimal-size table; with
//! j4 the slices interact through unions, and a scan over slice vectors
//! within the base budget records the minimal cost of each reachable
//! column vector. Both reductions are exact, so the first satisfying model
//! in canonical order can be recovered: take the first point with a
//! satisfying vector, and scan bases of the minimal achievable size in
//! lexical order until one's columns evaluate true. Smaller bases cannot
//! satisfy the target at that point, since any base realizes a column
//! vector of cost at most its size.

use super::{Combos, SatVerdict, Universe};
use crate::evidence::{EvidenceBase, EvidenceEngine};
use crate::semantics::Evaluator;
use crate::syntax::Formula;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Attempts the column decision. `None` means the instance is outside the
/// abstraction's resource preconditions and the caller should stream.
pub(crate) fn try_fast(uni: &Universe) -> Option<SatVerdict> {
    let np = uni.n_pairs();
    let nj = uni.just_pairs.len();
    let na = uni.atoms.len();
    let maxw = uni.bounds.max_worlds;
    let maxb = uni.bounds.max_base;
    if maxw > 4 || nj > 21 || np > 128 || na * maxw > 24 {
        return None;
    }
    let uses_j4 = uni.logic.spec().uses_j4;
    if uses_j4 {
        if np > 20 || count_subsets(np * maxw, maxb) > 3_000_000 {
            return None;
        }
    } else if count_subsets(np, maxb) > 5_000_000 {
        return None;
    }

    let prog = Program::new(uni);
    let mut scratch = Vec::new();
    let mut memo = if uses_j4 { Some(ColMemo::new(np)) } else { None };
    let table = if uses_j4 {
        None
    } else {
        let t = build_table(uni);
        let ncols = t.1.len() as u64;
        if ncols.checked_pow(maxw as u32).map_or(true, |n| n > 2_000_000) {
            return None;
        }
        Some(t)
    };

    for k in 1..=maxw {
        let indep = table.as_ref().map(|(_, cols)| independent_colvecs(cols, k, maxb));
        for r_mask in 0..1u64 << (k * k) {
            if !uni.frame_ok(k, r_mask) {
                continue;
            }
            let succ = succ_masks(k, r_mask);
            let joined = memo.as_mut().map(|m| joined_feas(uni, m, k, r_mask));
            let feas: &[(u128, u32)] =
                joined.as_deref().or(indep.as_deref()).expect("one column family is active");
            for val_mask in 0..1u64 << (k * na) {
                let mut best: Option<u32> = None;
                for &(colvec, cost) in feas {
                    if best.map_or(true, |b| cost < b)
                        && prog.eval(&mut scratch, k, na, &succ, val_mask, colvec) != 0
                    {
                        best = Some(cost);
                    }
                }
                let Some(size) = best else { continue };
                let verdict = if let Some((table, _)) = &table {
                    scan_witness(uni, &prog, &mut scratch, k, r_mask, val_mask, size, &succ, |slices| {
                        let mut packed = 0u128;
                        for (w, s) in slices.iter().enumerate() {
                            packed |= (table[s] as u128) << (32 * w);
                        }
                        packed
                    })
                } else {
                    let m = memo.as_mut().expect("one column family is active");
                    let anc = ancestor_masks(k, r_mask);
                    scan_witness(uni, &prog, &mut scratch, k, r_mask, val_mask, size, &succ, |slices| {
                        let mut packed = 0u128;
                        for w in 0..k {
                            let mut un = 0u128;
                            for (v, s) in slices.iter().enumerate() {
                                if anc[w] >> v & 1 == 1 {
                                    un |= s;
                                }
                            }
                            packed |= (m.get(uni, un) as u128) << (32 * w);
                        }
                        packed
                    })
                };
                return Some(verdict);
            }
        }
    }
    Some(SatVerdict::Unsatisfiable { bounds: uni.bounds })
}

/// Sum of C(n, s) for s up to `max_size`, saturating.
fn count_subsets(n: usize, max_size: usize) -> u64 {
    let mut total = 1u64;
    let mut c = 1u64;
    for s in 1..=max_size.min(n) {
        c = c.saturating_mul((n - s + 1) as u64) / s as u64;
        total = total.saturating_add(c);
    }
    total
}

/// The abstract evaluator: the target compiled to a postorder program over
/// its distinct subformulas, evaluated as per-world bit masks.
struct Program {
    ops: Vec<Op>,
}

enum Op {
    Atom(usize),
    Not(usize),
    Imp(usize, usize),
    /// (bit position in a column, slot of the justified subformula)
    Just(usize, usize),
}

impl Program {
    fn new(uni: &Universe) -> Program {
        let mut ops = Vec::new();
        let mut memo = HashMap::new();
        compile(&uni.target, uni, &mut ops, &mut memo);
        Program { ops }
    }

    /// Truth mask of the target over the k worlds. The column vector packs
    /// world w's evidence column into bits 32w..32w+32.
    fn eval(
        &self,
        scratch: &mut Vec<u32>,
        k: usize,
        na: usize,
        succ: &[u32],
        val_mask: u64,
        colvec: u128,
    ) -> u32 {
        let kmask = (1u32 << k) - 1;
        scratch.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Atom(ai) => {
                    let mut m = 0u32;
                    for w in 0..k {
                        m |= ((val_mask >> (w * na + ai) & 1) as u32) << w;
                    }
                    m
                }
                Op::Not(a) => !scratch[a] & kmask,
                Op::Imp(a, b) => (!scratch[a] | scratch[b]) & kmask,
                Op::Just(q, body) => {
                    let mut m = 0u32;
                    for (w, s) in succ.iter().enumerate() {
                        if colvec >> (32 * w + q) & 1 == 1 && scratch[body] & s == *s {
                            m |= 1 << w;
                        }
                    }
                    m
                }
            };
            scratch.push(v);
        }
        *scratch.last().expect("programs are nonempty")
    }
}

fn compile<'f>(
    f: &'f Formula,
    uni: &Universe,
    ops: &mut Vec<Op>,
    memo: &mut HashMap<&'f Formula, usize>,
) -> usize {
    if let Some(&slot) = memo.get(f) {
        return slot;
    }
    let op = match f {
        Formula::Atom(i) => Op::Atom(uni.atoms.binary_search(i).expect("atom in pool")),
        Formula::Not(g) => Op::Not(compile(g, uni, ops, memo)),
        Formula::Implies(a, b) => {
            let a = compile(a, uni, ops, memo);
            let b = compile(b, uni, ops, memo);
            Op::Imp(a, b)
        }
        Formula::Just(t, g) => {
            let body = compile(g, uni, ops, memo);
            let ti = uni.terms.binary_search(t).expect("term in pool");
            let fi = uni.formulas.binary_search(g).expect("formula in pool");
            let q = uni.just_pairs.binary_search(&(ti, fi)).expect("pair indexed");
            Op::Just(q, body)
        }
    };
    ops.push(op);
    memo.insert(f, ops.len() - 1);
    ops.len() - 1
}

/// Evidence column of one pair set: bit q is set when the engine, run on a
/// one-world model whose base is the set, grants just pair q.
fn compute_col(uni: &Universe, slice: u128) -> u32 {
    let nf = uni.formulas.len();
    let mut base = EvidenceBase::new();
    let mut bits = slice;
    while bits != 0 {
        let p = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        base.insert((uni.terms[p / nf].clone(), uni.formulas[p % nf].clone(), 0));
    }
    let engine = EvidenceEngine::new(uni.logic, uni.cs.clone(), 1, &BTreeSet::new(), &base);
    let mut col = 0u32;
    for (q, &(ti, fi)) in uni.just_pairs.iter().enumerate() {
        if engine.contains(&uni.terms[ti], &uni.formulas[fi], 0) {
            col |= 1 << q;
        }
    }
    col
}

/// Slice vectors within budget: every assignment of pair sets to the k
/// worlds whose sizes sum to at most `budget`, visited once each.
fn scan_vecs(
    np: usize,
    k: usize,
    budget: usize,
    start: usize,
    slices: &mut [u128],
    visit: &mut impl FnMut(&[u128]),
) {
    visit(slices);
    if budget == 0 {
        return;
    }
    for slot in start..np * k {
        let (pair, w) = (slot / k, slot % k);
        slices[w] |= 1u128 << pair;
        scan_vecs(np, k, budget - 1, slot + 1, slices, visit);
        slices[w] &= !(1u128 << pair);
    }
}

/// Non-j4 column data: the column of every slice within budget, plus each
/// distinct column's minimal slice size.
fn build_table(uni: &Universe) -> (HashMap<u128, u32>, Vec<(u32, u32)>) {
    let mut table = HashMap::new();
    let mut slices = [0u128];
    scan_vecs(uni.n_pairs(), 1, uni.bounds.max_base, 0, &mut slices, &mut |s| {
        table.insert(s[0], compute_col(uni, s[0]));
    });
    let mut mincost: BTreeMap<u32, u32> = BTreeMap::new();
    for (mask, col) in &table {
        let size = mask.count_ones();
        mincost.entry(*col).and_modify(|m| *m = (*m).min(size)).or_insert(size);
    }
    (table, mincost.into_iter().collect())
}

/// All column vectors over independent worlds, with minimal total cost,
/// kept when affordable.
fn independent_colvecs(cols: &[(u32, u32)], k: usize, maxb: usize) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let mut packed = 0u128;
        let mut cost = 0u32;
        for (w, &i) in idx.iter().enumerate() {
            let (col, c) = cols[i];
            packed |= (col as u128) << (32 * w);
            cost += c;
        }
        if cost as usize <= maxb {
            out.push((packed, cost));
        }
        let mut w = 0;
        loop {
            if w == k {
                return out;
            }
            idx[w] += 1;
            if idx[w] < cols.len() {
                break;
            }
            idx[w] = 0;
            w += 1;
        }
    }
}

/// Lazily tabulated columns over pair-set masks, for the j4 unions.
struct ColMemo {
    direct: Vec<u32>,
}

impl ColMemo {
    fn new(np: usize) -> ColMemo {
        ColMemo { direct: vec![u32::MAX; 1 << np] }
    }

    fn get(&mut self, uni: &Universe, mask: u128) -> u32 {
        let i = mask as usize;
        if self.direct[i] == u32::MAX {
            self.direct[i] = compute_col(uni, mask);
        }
        self.direct[i]
    }
}

/// j4 feasibility for one frame: the reachable column vectors with minimal
/// total base size, found by scanning every slice vector within budget and
/// joining slices along reverse accessibility.
fn joined_feas(uni: &Universe, memo: &mut ColMemo, k: usize, r_mask: u64) -> Vec<(u128, u32)> {
    let anc = ancestor_masks(k, r_mask);
    let mut feas: HashMap<u128, u32> = HashMap::new();
    let mut slices = vec![0u128; k];
    scan_vecs(uni.n_pairs(), k, uni.bounds.max_base, 0, &mut slices, &mut |s| {
        let mut packed = 0u128;
        let mut cost = 0u32;
        for w in 0..k {
            let mut un = 0u128;
            for (v, slice) in s.iter().enumerate() {
                if anc[w] >> v & 1 == 1 {
                    un |= slice;
                }
            }
            packed |= (memo.get(uni, un) as u128) << (32 * w);
            cost += s[w].count_ones();
        }
        feas.entry(packed).and_modify(|m| *m = (*m).min(cost)).or_insert(cost);
    });
    let mut out: Vec<(u128, u32)> = feas.into_iter().collect();
    out.sort_unstable();
    out
}

/// Successor masks per world: bit v of entry w says w sees v.
fn succ_masks(k: usize, r_mask: u64) -> Vec<u32> {
    (0..k)
        .map(|w| {
            let mut m = 0u32;
            for v in 0..k {
                if r_mask >> (w * k + v) & 1 == 1 {
                    m |= 1 << v;
                }
            }
            m
        })
        .collect()
}

/// Reflexive-transitive ancestor masks: bit v of entry w says v reaches w.
fn ancestor_masks(k: usize, r_mask: u64) -> Vec<u32> {
    let mut reach: Vec<u32> = (0..k)
        .map(|i| {
            let mut m = 1u32 << i;
            for j in 0..k {
                if r_mask >> (i * k + j) & 1 == 1 {
                    m |= 1 << j;
                }
            }
            m
        })
        .collect();
    loop {
        let mut changed = false;
        for i in 0..k {
            let mut m = reach[i];
            let mut bits = m;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                m |= reach[j];
            }
            if m != reach[i] {
                reach[i] = m;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (0..k)
        .map(|w| {
            let mut m = 0u32;
            for (v, r) in reach.iter().enumerate() {
                if r >> w & 1 == 1 {
                    m |= 1 << v;
                }
            }
            m
        })
        .collect()
}

/// Recovers the canonically first witness at a satisfiable point: bases of
/// exactly the minimal satisfying size, in lexical triple order, until the
/// columns make the target true. The winner is re-verified with the real
/// evaluator before being returned.
#[allow(clippy::too_many_arguments)]
fn scan_witness(
    uni: &Universe,
    prog: &Program,
    scratch: &mut Vec<u32>,
    k: usize,
    r_mask: u64,
    val_mask: u64,
    size: u32,
    succ: &[u32],
    mut colvec_of: impl FnMut(&[u128]) -> u128,
) -> SatVerdict {
    let na = uni.atoms.len();
    let mut slices = vec![0u128; k];
    for combo in Combos::exact(uni.n_pairs() * k, size as usize) {
        for s in slices.iter_mut() {
            *s = 0;
        }
        for &idx in &combo {
            slices[idx % k] |= 1u128 << (idx / k);
        }
        let colvec = colvec_of(&slices);
        if prog.eval(scratch, k, na, succ, val_mask, colvec) != 0 {
            let model = uni.model(k, r_mask, val_mask, &combo);
            let ev = Evaluator::new(&model).expect("searched models satisfy their frame conditions");
            let world = (0..k)
                .find(|w| ev.eval(&uni.target, *w))
                .expect("column abstraction disagreed with the evaluator");
            return SatVerdict::Satisfiable { model, world };
        }
    }
    unreachable!("a witness of the promised size exists")
}
