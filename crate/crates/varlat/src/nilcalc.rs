//! Exact identity entailment for finitely presented commutative
//! nil-varieties.
//!
//! A presentation fixes an explicit nil exponent `p`, so the free object of
//! the presented variety on `k` generators is finite: exponent vectors with
//! all coordinates below `p`, plus an absorbing zero. Entailment reduces to
//! congruence closure on that carrier, which makes every query exact rather
//! than merely semi-decidable.
//!
//! Completed quotients are immutable; a per-thread memo keyed by
//! (basis, generator count) makes repeated queries against the same
//! presentation cheap. Independent queries may run on different threads
//! without coordination.

use crate::commwords::{embeds, CommWord, Identity, Letter};
use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

/// Resource bounds for entailment queries. Every cap is configurable; the
/// defaults cover all identities appearing in the bundled catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Largest number of distinct letters in a query identity.
    pub max_letters: u32,
    /// Largest admissible nil exponent.
    pub max_p: u32,
    /// Largest carrier size (p^k classes before identification).
    pub max_carrier: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_letters: 4,
            max_p: 6,
            max_carrier: 1_000_000,
        }
    }
}

impl Caps {
    /// Caps suitable for exploring the catalog up to index 7.
    pub fn roomy() -> Self {
        Caps {
            max_letters: 8,
            max_p: 6,
            max_carrier: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NilError {
    CapExceeded(String),
    /// The nil exponent must be positive.
    InvalidExponent,
}

impl fmt::Display for NilError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NilError::CapExceeded(what) => write!(f, "cap exceeded: {}", what),
            NilError::InvalidExponent => write!(f, "nil exponent must be at least 1"),
        }
    }
}

impl std::error::Error for NilError {}

/// A finite presentation of a commutative nil-variety: an explicit nil
/// exponent `p` together with finitely many defining identities. The
/// identities `x^p = 0` and commutativity are implicit members; `p = 1`
/// presents the trivial variety.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NilBasis {
    p: u32,
    ids: BTreeSet<Identity>,
}

impl NilBasis {
    pub fn new<I: IntoIterator<Item = Identity>>(p: u32, ids: I) -> Result<Self, NilError> {
        if p == 0 {
            return Err(NilError::InvalidExponent);
        }
        Ok(NilBasis {
            p,
            ids: ids.into_iter().map(|id| id.canonical()).collect(),
        })
    }

    /// The presentation of the trivial variety.
    pub fn trivial() -> Self {
        NilBasis {
            p: 1,
            ids: BTreeSet::new(),
        }
    }

    pub fn nil_exponent(&self) -> u32 {
        self.p
    }

    pub fn identities(&self) -> impl Iterator<Item = &Identity> {
        self.ids.iter()
    }
}

impl fmt::Display for NilBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N{{p={}", self.p)?;
        for (i, id) in self.ids.iter().enumerate() {
            write!(f, "{} {}", if i == 0 { ";" } else { "," }, id)?;
        }
        write!(f, "}}")
    }
}

/// The word set that is exempt from zero-forcing on the left of
/// `x^2 y = v`: `{x^2 y, x y^2}` modulo commutativity.
pub fn w_words() -> [CommWord; 2] {
    [
        CommWord::from_pairs([(Letter(0), 2), (Letter(1), 1)]).unwrap(),
        CommWord::from_pairs([(Letter(0), 1), (Letter(1), 2)]).unwrap(),
    ]
}

/// The free object of a presented nil-variety on `k` generators.
///
/// Carrier elements are exponent vectors in `{0..p-1}^k` (not all zero)
/// together with an absorbing zero; multiplication adds vectors and any
/// coordinate reaching `p` collapses the product to zero. `class_of`
/// realizes the least congruence containing all substitution instances of
/// the defining identities.
#[derive(Debug)]
pub struct FreeNilQuotient {
    p: u32,
    k: u32,
    /// p^k; vector codes are 1..n_codes-1, the zero element is n_codes.
    n_codes: usize,
    class_of: Vec<u32>,
    /// Smallest element code in each class, in class order.
    reps: Vec<usize>,
    zero_class: u32,
}

impl FreeNilQuotient {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn generators(&self) -> u32 {
        self.k
    }

    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    pub fn zero_class(&self) -> u32 {
        self.zero_class
    }

    fn decode(&self, code: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.k as usize];
        let mut c = code;
        for coord in v.iter_mut() {
            *coord = (c % self.p as usize) as u32;
            c /= self.p as usize;
        }
        v
    }

    /// The class of the word with the given exponents over the generators.
    /// Any coordinate at or above `p` lands in the zero class. Panics on the
    /// empty word.
    pub fn class_of_exponents(&self, exps: &[u32]) -> u32 {
        assert_eq!(exps.len(), self.k as usize);
        assert!(exps.iter().any(|&e| e > 0), "empty word has no class");
        let mut code = 0usize;
        let mut pw = 1usize;
        for &e in exps {
            if e >= self.p {
                return self.zero_class;
            }
            code += e as usize * pw;
            pw *= self.p as usize;
        }
        self.class_of[code]
    }

    /// Exponent vector of the chosen representative, or `None` for the zero
    /// class.
    pub fn rep_exponents(&self, class: u32) -> Option<Vec<u32>> {
        let code = self.reps[class as usize];
        if code == self.n_codes {
            None
        } else {
            Some(self.decode(code))
        }
    }

    /// Class multiplication. Well defined because the partition is a
    /// congruence.
    pub fn mul_classes(&self, a: u32, b: u32) -> u32 {
        if a == self.zero_class || b == self.zero_class {
            return self.zero_class;
        }
        let va = self.rep_exponents(a).unwrap();
        let vb = self.rep_exponents(b).unwrap();
        let sum: Vec<u32> = va.iter().zip(&vb).map(|(x, y)| x + y).collect();
        self.class_of_exponents(&sum)
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    /// Keeps the smaller root; returns false if already joined.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }
}

/// Image of one letter in a substitution instance.
#[derive(Clone, Copy)]
enum Image<'a> {
    Zero,
    Vec(&'a [u32]),
}

struct Builder {
    p: u32,
    k: usize,
    zero: u32,
    uf: UnionFind,
    queue: VecDeque<(u32, u32)>,
    budget: u64,
}

const EVAL_BUDGET: u64 = 50_000_000;

impl Builder {
    fn new(p: u32, k: usize, n_codes: usize) -> Self {
        Builder {
            p,
            k,
            zero: n_codes as u32,
            uf: UnionFind::new(n_codes + 1),
            queue: VecDeque::new(),
            budget: 0,
        }
    }

    fn spend(&mut self) -> Result<(), NilError> {
        self.budget += 1;
        if self.budget > EVAL_BUDGET {
            return Err(NilError::CapExceeded(
                "substitution instance enumeration exceeded the internal budget".into(),
            ));
        }
        Ok(())
    }

    fn decode(&self, code: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.k];
        let mut c = code;
        for coord in v.iter_mut() {
            *coord = (c % self.p as usize) as u32;
            c /= self.p as usize;
        }
        v
    }

    fn encode(&self, v: &[u32]) -> u32 {
        let mut code = 0usize;
        let mut pw = 1usize;
        for &e in v {
            debug_assert!(e < self.p);
            code += e as usize * pw;
            pw *= self.p as usize;
        }
        code as u32
    }

    /// code * generator g; overflow collapses to zero.
    fn add_gen(&self, code: u32, g: usize) -> u32 {
        if code == self.zero {
            return self.zero;
        }
        let pw = (self.p as usize).pow(g as u32);
        let digit = (code as usize / pw) % self.p as usize;
        if digit + 1 >= self.p as usize {
            self.zero
        } else {
            code + pw as u32
        }
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        if self.uf.union(a, b) {
            self.queue.push_back((a, b));
            true
        } else {
            false
        }
    }

    /// Translation closure: every identified pair stays identified after
    /// multiplying both sides by any generator.
    fn pump(&mut self) {
        while let Some((a, b)) = self.queue.pop_front() {
            for g in 0..self.k {
                let ag = self.add_gen(a, g);
                let bg = self.add_gen(b, g);
                if ag != bg {
                    self.union(ag, bg);
                }
            }
        }
    }

    /// Value of one side of an identity under the given images. `exps[i]`
    /// is the multiplicity of letter `i` on this side (zero if absent).
    fn eval_side(&self, exps: &[u32], images: &[Image<'_>]) -> u32 {
        let mut acc = vec![0u32; self.k];
        for (i, &mult) in exps.iter().enumerate() {
            if mult == 0 {
                continue;
            }
            match images[i] {
                Image::Zero => return self.zero,
                Image::Vec(v) => {
                    for (a, &c) in acc.iter_mut().zip(v) {
                        *a += mult * c;
                        if *a >= self.p {
                            return self.zero;
                        }
                    }
                }
            }
        }
        self.encode(&acc)
    }
}

/// Per-letter data for instance enumeration. Letters with the same
/// multiplicity pair are interchangeable, so within such a group only
/// non-decreasing image tuples are generated.
struct LetterSlot {
    u_mult: u32,
    v_mult: u32,
    /// Index of the previous slot in the same group, if any.
    tied_to: Option<usize>,
    balanced: bool,
}

fn letter_slots(u: &CommWord, v: &CommWord) -> Vec<LetterSlot> {
    let letters: Vec<Letter> = u.content().union(&v.content()).copied().collect();
    let mut slots: Vec<LetterSlot> = Vec::with_capacity(letters.len());
    for (i, &l) in letters.iter().enumerate() {
        let um = u.exponent(l);
        let vm = v.exponent(l);
        let tied_to = (0..i).rev().find(|&j| {
            slots[j].u_mult == um && slots[j].v_mult == vm
        });
        slots.push(LetterSlot {
            u_mult: um,
            v_mult: vm,
            tied_to,
            balanced: um == vm,
        });
    }
    slots
}

/// Seeds all instances of `w = 0`. Single-generator images suffice: larger
/// images differ from some single-generator instance by a translation, and
/// the zero element absorbs translations.
fn seed_zero(b: &mut Builder, w: &CommWord) -> Result<(), NilError> {
    let slots = letter_slots(w, w);
    let n = slots.len();
    let mut choice = vec![0usize; n];
    let u_exps: Vec<u32> = slots.iter().map(|s| s.u_mult).collect();
    let mut gens: Vec<Vec<u32>> = Vec::with_capacity(b.k);
    for g in 0..b.k {
        let mut v = vec![0u32; b.k];
        v[g] = 1;
        gens.push(v);
    }
    loop {
        b.spend()?;
        let images: Vec<Image<'_>> = choice.iter().map(|&g| Image::Vec(&gens[g])).collect();
        let val = b.eval_side(&u_exps, &images);
        if val != b.zero {
            b.union(val, b.zero);
        }
        // odometer with non-decreasing tuples inside tied groups
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < b.k {
                // reset the tail; tied slots restart at their group's current value
                for j in i + 1..n {
                    choice[j] = match slots[j].tied_to {
                        Some(t) => choice[t],
                        None => 0,
                    };
                }
                break;
            }
            choice[i] = 0;
        }
    }
}

/// One pass of an `u = v` identity over the current classes. Balanced
/// letters take single-generator images (larger images are translations of
/// those); unbalanced letters range over class representatives and zero.
fn equal_pass(
    b: &mut Builder,
    u: &CommWord,
    v: &CommWord,
    rep_vecs: &[Vec<u32>],
) -> Result<bool, NilError> {
    let slots = letter_slots(u, v);
    let n = slots.len();
    let u_exps: Vec<u32> = slots.iter().map(|s| s.u_mult).collect();
    let v_exps: Vec<u32> = slots.iter().map(|s| s.v_mult).collect();

    let mut gens: Vec<Vec<u32>> = Vec::with_capacity(b.k);
    for g in 0..b.k {
        let mut gv = vec![0u32; b.k];
        gv[g] = 1;
        gens.push(gv);
    }

    // domain sizes: balanced -> k generators; unbalanced -> reps then zero
    let k = b.k;
    let dom = |i: usize| -> usize {
        if slots[i].balanced {
            k
        } else {
            rep_vecs.len() + 1
        }
    };
    let image = |i: usize, c: usize| -> Image<'_> {
        if slots[i].balanced {
            Image::Vec(&gens[c])
        } else if c < rep_vecs.len() {
            Image::Vec(&rep_vecs[c])
        } else {
            Image::Zero
        }
    };

    let mut choice = vec![0usize; n];
    let mut changed = false;
    loop {
        b.spend()?;
        let images: Vec<Image<'_>> = (0..n).map(|i| image(i, choice[i])).collect();
        let lhs = b.eval_side(&u_exps, &images);
        let rhs = b.eval_side(&v_exps, &images);
        if lhs != rhs && b.uf.find(lhs) != b.uf.find(rhs) {
            b.union(lhs, rhs);
            b.pump();
            changed = true;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(changed);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < dom(i) {
                for j in i + 1..n {
                    choice[j] = match slots[j].tied_to {
                        Some(t) => choice[t],
                        None => 0,
                    };
                }
                break;
            }
            choice[i] = 0;
        }
    }
}

fn check_caps(basis: &NilBasis, letters: u32, caps: &Caps) -> Result<usize, NilError> {
    assert!(letters >= 1, "the free object needs at least one generator");
    if letters > caps.max_letters {
        return Err(NilError::CapExceeded(format!(
            "{} letters exceed the configured maximum {}",
            letters, caps.max_letters
        )));
    }
    if basis.p > caps.max_p {
        return Err(NilError::CapExceeded(format!(
            "nil exponent {} exceeds the configured maximum {}",
            basis.p, caps.max_p
        )));
    }
    let n_codes = (basis.p as usize)
        .checked_pow(letters)
        .filter(|&n| n <= caps.max_carrier)
        .ok_or_else(|| {
            NilError::CapExceeded(format!(
                "carrier {}^{} exceeds the configured maximum {}",
                basis.p, letters, caps.max_carrier
            ))
        })?;
    Ok(n_codes)
}

fn build_quotient(basis: &NilBasis, letters: u32, caps: &Caps) -> Result<FreeNilQuotient, NilError> {
    let n_codes = check_caps(basis, letters, caps)?;
    let k = letters as usize;
    let mut b = Builder::new(basis.p, k, n_codes);

    // 0-reduced identities first: they are stable under the fixpoint loop
    // and collapse most of the carrier before any equation pass runs.
    for id in &basis.ids {
        if let Identity::ZeroEq(w) = id {
            seed_zero(&mut b, w)?;
        }
    }
    b.pump();

    let equations: Vec<(&CommWord, &CommWord)> = basis
        .ids
        .iter()
        .filter_map(|id| match id {
            Identity::Equal(u, v) if u != v => Some((u, v)),
            _ => None,
        })
        .collect();

    if !equations.is_empty() {
        loop {
            let mut reps: Vec<u32> = Vec::new();
            for code in 1..n_codes as u32 {
                if b.uf.find(code) == code {
                    reps.push(code);
                }
            }
            // zero is handled as a separate image kind, not a representative
            let rep_vecs: Vec<Vec<u32>> = reps.iter().map(|&c| b.decode(c as usize)).collect();
            let mut changed = false;
            for &(u, v) in &equations {
                changed |= equal_pass(&mut b, u, v, &rep_vecs)?;
            }
            b.pump();
            if !changed {
                break;
            }
        }
    }

    // freeze classes, ordered by their smallest element code
    let mut class_of = vec![u32::MAX; n_codes + 1];
    let mut reps = Vec::new();
    let mut root_class: HashMap<u32, u32> = HashMap::new();
    for code in (1..=n_codes).map(|c| c as u32) {
        let root = b.uf.find(code);
        let class = *root_class.entry(root).or_insert_with(|| {
            reps.push(code as usize);
            (reps.len() - 1) as u32
        });
        class_of[code as usize] = class;
    }
    let zero_class = class_of[n_codes];
    Ok(FreeNilQuotient {
        p: basis.p,
        k: letters,
        n_codes,
        class_of,
        reps,
        zero_class,
    })
}

thread_local! {
    static MEMO: RefCell<HashMap<(NilBasis, u32), Arc<FreeNilQuotient>>> =
        RefCell::new(HashMap::new());
}

/// The free object of the presented variety on `letters` generators, as an
/// explicit finite quotient. Results are memoized per thread.
pub fn free_quotient(
    basis: &NilBasis,
    letters: u32,
    caps: &Caps,
) -> Result<Arc<FreeNilQuotient>, NilError> {
    check_caps(basis, letters, caps)?;
    MEMO.with(|memo| {
        if let Some(q) = memo.borrow().get(&(basis.clone(), letters)) {
            return Ok(q.clone());
        }
        let q = Arc::new(build_quotient(basis, letters, caps)?);
        let mut memo = memo.borrow_mut();
        if memo.len() >= 512 {
            memo.clear();
        }
        memo.insert((basis.clone(), letters), q.clone());
        Ok(q)
    })
}

/// Whether the identity holds in the variety presented by `basis`.
///
/// Exact in both directions: on `true` the identity holds by construction of
/// the congruence; on `false` the two sides occupy distinct classes of the
/// free quotient, which is a concrete finite countermodel.
pub fn entails(basis: &NilBasis, id: &Identity, caps: &Caps) -> Result<bool, NilError> {
    let id = id.canonical();
    if id.is_trivial() {
        return Ok(true);
    }
    let k = id.letter_count() as u32;
    let q = free_quotient(basis, k, caps)?;
    let exps_of = |w: &CommWord| -> Vec<u32> {
        (0..k).map(|i| w.exponent(Letter(i))).collect()
    };
    Ok(match &id {
        Identity::Equal(u, v) => {
            q.class_of_exponents(&exps_of(u)) == q.class_of_exponents(&exps_of(v))
        }
        Identity::ZeroEq(w) => q.class_of_exponents(&exps_of(w)) == q.zero_class(),
    })
}

/// Zero-equations forced in every commutative nil-variety satisfying the
/// given equation: both sides vanish when the contents differ, or when the
/// strictly shorter side embeds into the longer one. Equal-content,
/// equal-length embeddings are bijective renamings and force nothing.
pub fn split_zero(id: &Identity) -> Vec<Identity> {
    let id = id.canonical();
    let Identity::Equal(u, v) = &id else {
        return Vec::new();
    };
    if u == v {
        return Vec::new();
    }
    let forced = u.content() != v.content()
        || (u.length() < v.length() && embeds(u, v))
        || (v.length() < u.length() && embeds(v, u));
    if !forced {
        return Vec::new();
    }
    let mut out = vec![
        Identity::ZeroEq(u.clone()).canonical(),
        Identity::ZeroEq(v.clone()).canonical(),
    ];
    out.sort();
    out.dedup();
    out
}

/// Result of a bounded nilpotency-degree search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Exact(u32),
    AboveBound(u32),
}

/// Least `n <= bound` such that every product of `n` distinct letters is
/// zero, i.e. the presented variety is nilpotent of degree `n`.
pub fn degree(basis: &NilBasis, bound: u32, caps: &Caps) -> Result<Degree, NilError> {
    if bound > caps.max_letters {
        return Err(NilError::CapExceeded(format!(
            "degree bound {} exceeds the letter cap {}",
            bound, caps.max_letters
        )));
    }
    for n in 1..=bound {
        let witness = Identity::ZeroEq(CommWord::product_of_distinct(n));
        if entails(basis, &witness, caps)? {
            return Ok(Degree::Exact(n));
        }
    }
    Ok(Degree::AboveBound(bound))
}

/// All non-increasing positive exponent profiles with the given sum bound
/// and at most `max_parts` parts.
fn profiles(len_bound: u32, max_parts: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max_first: u32, parts_left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if rest == 0 || parts_left == 0 {
            return;
        }
        for e in (1..=max_first.min(rest)).rev() {
            cur.push(e);
            go(rest - e, e, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len_bound, len_bound, max_parts, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// A minimal (under embedding-divisibility) generating set for all
/// zero-equations `w = 0` of length at most `length_bound` entailed by the
/// basis. Complete within the bound; zero-equations of greater length may
/// need generators that longer bounds would reveal.
pub fn zr_generators(
    basis: &NilBasis,
    length_bound: u32,
    caps: &Caps,
) -> Result<Vec<Identity>, NilError> {
    let max_parts = length_bound.min(caps.max_letters);
    let mut zeros: Vec<CommWord> = Vec::new();
    for profile in profiles(length_bound, max_parts) {
        let w = CommWord::from_pairs(
            profile
                .iter()
                .enumerate()
                .map(|(i, &e)| (Letter(i as u32), e)),
        )
        .unwrap();
        if entails(basis, &Identity::ZeroEq(w.clone()), caps)? {
            zeros.push(w);
        }
    }
    let minimal: Vec<Identity> = zeros
        .iter()
        .filter(|w| !zeros.iter().any(|w2| w2 != *w && embeds(w2, w)))
        .map(|w| Identity::ZeroEq(w.clone()))
        .collect();
    Ok(minimal)
}

/// Whether the variety presented by `a` is contained in the one presented by
/// `b`: every defining identity of `b` (including its nil exponent) must
/// hold in `a`.
pub fn nil_subvariety(a: &NilBasis, b: &NilBasis, caps: &Caps) -> Result<bool, NilError> {
    let power = Identity::ZeroEq(CommWord::power(Letter(0), b.p));
    if !entails(a, &power, caps)? {
        return Ok(false);
    }
    for id in &b.ids {
        if !entails(a, id, caps)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(pairs: &[(u32, u32)]) -> CommWord {
        CommWord::from_pairs(pairs.iter().map(|&(l, e)| (Letter(l), e))).unwrap()
    }

    fn eq(a: &[(u32, u32)], b: &[(u32, u32)]) -> Identity {
        Identity::Equal(w(a), w(b))
    }

    fn zero(a: &[(u32, u32)]) -> Identity {
        Identity::ZeroEq(w(a))
    }

    fn caps() -> Caps {
        Caps::roomy()
    }

    // x^2 y = x y^2 with x^4 = 0
    fn basis_i_top() -> NilBasis {
        NilBasis::new(4, [eq(&[(0, 2), (1, 1)], &[(0, 1), (1, 2)]), zero(&[(0, 2), (1, 1), (2, 1)])]).unwrap()
    }

    fn basis_k_top() -> NilBasis {
        NilBasis::new(3, [zero(&[(0, 2), (1, 1)])]).unwrap()
    }

    #[test]
    fn free_quotient_class_counts() {
        let l = NilBasis::new(2, []).unwrap();
        let q = free_quotient(&l, 2, &caps()).unwrap();
        assert_eq!(q.class_count(), 4); // x, y, xy, 0

        let t = NilBasis::trivial();
        let q = free_quotient(&t, 1, &caps()).unwrap();
        assert_eq!(q.class_count(), 1);

        let q = free_quotient(&basis_k_top(), 1, &caps()).unwrap();
        assert_eq!(q.class_count(), 3); // x, x^2, 0
    }

    #[test]
    fn entails_examples() {
        let n = NilBasis::new(4, [eq(&[(0, 2), (1, 1)], &[(0, 1), (1, 2)])]).unwrap();
        assert!(entails(&n, &zero(&[(0, 2), (1, 1), (2, 1)]), &caps()).unwrap());

        let n = NilBasis::new(4, [zero(&[(0, 2), (1, 1)])]).unwrap();
        assert!(entails(&n, &zero(&[(0, 2), (1, 1), (2, 1)]), &caps()).unwrap());

        assert!(!entails(&basis_i_top(), &zero(&[(0, 2), (1, 1)]), &caps()).unwrap());
    }

    #[test]
    fn entails_is_exact_on_the_trivial_and_squarefree_cases() {
        let t = NilBasis::trivial();
        assert!(entails(&t, &zero(&[(0, 1)]), &caps()).unwrap());
        let l = NilBasis::new(2, []).unwrap();
        // squarefree products of distinct letters never vanish
        for n in 1..=6 {
            let witness = Identity::ZeroEq(CommWord::product_of_distinct(n));
            assert!(!entails(&l, &witness, &caps()).unwrap());
        }
    }

    #[test]
    fn split_zero_examples() {
        // xy = x: contents differ, both sides vanish
        let out = split_zero(&eq(&[(0, 1), (1, 1)], &[(0, 1)]));
        assert_eq!(out.len(), 2);
        assert!(out.contains(&zero(&[(0, 1), (1, 1)]).canonical()));
        assert!(out.contains(&zero(&[(0, 1)]).canonical()));

        // x^2 y z = x y^2 z^2: the shorter side embeds into the longer
        let out = split_zero(&eq(&[(0, 2), (1, 1), (2, 1)], &[(0, 1), (1, 2), (2, 2)]));
        assert_eq!(out.len(), 2);

        // x^2 y = x y^2: equal contents and equal length force nothing
        assert!(split_zero(&eq(&[(0, 2), (1, 1)], &[(0, 1), (1, 2)])).is_empty());
    }

    #[test]
    fn degree_examples() {
        let k5 = NilBasis::new(
            3,
            [zero(&[(0, 2), (1, 1)]), Identity::ZeroEq(CommWord::product_of_distinct(5))],
        )
        .unwrap();
        assert_eq!(degree(&k5, 7, &caps()).unwrap(), Degree::Exact(5));
        assert_eq!(degree(&NilBasis::trivial(), 3, &caps()).unwrap(), Degree::Exact(1));
        let l = NilBasis::new(2, []).unwrap();
        assert_eq!(degree(&l, 6, &caps()).unwrap(), Degree::AboveBound(6));
    }

    #[test]
    fn zr_generator_examples() {
        let gens = zr_generators(&basis_i_top(), 4, &caps()).unwrap();
        assert_eq!(gens, vec![zero(&[(0, 2), (1, 1), (2, 1)]).canonical()]);

        let gens = zr_generators(&basis_k_top(), 3, &caps()).unwrap();
        assert_eq!(gens, vec![zero(&[(0, 2), (1, 1)]).canonical()]);

        let gens = zr_generators(&NilBasis::trivial(), 3, &caps()).unwrap();
        assert_eq!(gens, vec![zero(&[(0, 1)]).canonical()]);
    }

    #[test]
    fn nil_subvariety_examples() {
        let l2 = NilBasis::new(2, [Identity::ZeroEq(CommWord::product_of_distinct(2))]).unwrap();
        let k3 = NilBasis::new(
            3,
            [zero(&[(0, 2), (1, 1)]), Identity::ZeroEq(CommWord::product_of_distinct(3))],
        )
        .unwrap();
        assert!(nil_subvariety(&l2, &k3, &caps()).unwrap());

        let cube = NilBasis::new(3, []).unwrap();
        assert!(!nil_subvariety(&cube, &basis_k_top(), &caps()).unwrap());

        assert!(nil_subvariety(&k3, &k3, &caps()).unwrap());
    }

    #[test]
    fn basis_members_are_entailed() {
        for basis in [basis_i_top(), basis_k_top()] {
            for id in basis.identities() {
                assert!(entails(&basis, id, &caps()).unwrap());
            }
            let power = Identity::ZeroEq(CommWord::power(Letter(0), basis.nil_exponent()));
            assert!(entails(&basis, &power, &caps()).unwrap());
        }
    }

    #[test]
    fn entailment_is_stable_under_substitution_and_translation() {
        let basis = basis_i_top();
        // x^2 y z = 0 entailed; substituted and multiplied forms stay entailed
        assert!(entails(&basis, &zero(&[(0, 2), (1, 1), (2, 1), (3, 1)]), &caps()).unwrap());
        assert!(entails(&basis, &zero(&[(0, 4), (1, 2)]), &caps()).unwrap());
        assert!(
            entails(
                &basis,
                &eq(&[(0, 2), (1, 1), (2, 1), (3, 1)], &[(0, 3), (1, 2), (2, 2)]),
                &caps()
            )
            .unwrap()
        );
    }

    #[test]
    fn splitting_is_admissible_in_the_engine() {
        // small exhaustive sweep; the acceptance suite runs the full one
        let words: Vec<CommWord> = {
            let mut out = Vec::new();
            for a in 0..=3u32 {
                for b in 0..=3u32 {
                    if a + b >= 1 && a + b <= 3 {
                        out.push(w(&[(0, a), (1, b)]));
                    }
                }
            }
            out
        };
        for u in &words {
            for v in &words {
                let id = Identity::Equal(u.clone(), v.clone());
                let basis = NilBasis::new(4, [id.clone()]).unwrap();
                for z in split_zero(&id) {
                    assert!(
                        entails(&basis, &z, &caps()).unwrap(),
                        "{} split to {} but the engine disagrees",
                        id,
                        z
                    );
                }
            }
        }
    }

    #[test]
    fn xxy_equals_any_word_outside_w_forces_xxy_zero() {
        let [xxy, xyy] = w_words();
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                let len = a + b;
                if len < 1 || len > 4 {
                    continue;
                }
                let v = w(&[(0, a), (1, b)]);
                if v == xxy || v == xyy {
                    continue;
                }
                let basis = NilBasis::new(4, [Identity::Equal(xxy.clone(), v.clone())]).unwrap();
                assert!(
                    entails(&basis, &Identity::ZeroEq(xxy.clone()), &caps()).unwrap(),
                    "x^2*y = {} should force x^2*y = 0",
                    v
                );
            }
        }
    }

    #[test]
    fn closure_does_not_depend_on_identity_order() {
        // same basis written with sides flipped and letters renamed
        let b1 = NilBasis::new(
            4,
            [eq(&[(0, 2), (1, 1)], &[(0, 1), (1, 2)]), zero(&[(0, 2), (1, 1), (2, 1)])],
        )
        .unwrap();
        let b2 = NilBasis::new(
            4,
            [zero(&[(2, 1), (5, 2), (9, 1)]), eq(&[(3, 1), (7, 2)], &[(3, 2), (7, 1)])],
        )
        .unwrap();
        assert_eq!(b1, b2);
        for k in 1..=3 {
            let q1 = build_quotient(&b1, k, &caps()).unwrap();
            let q2 = build_quotient(&b2, k, &caps()).unwrap();
            assert_eq!(q1.class_of, q2.class_of);
        }
    }

    #[test]
    fn caps_are_enforced() {
        let tight = Caps {
            max_letters: 2,
            max_p: 3,
            max_carrier: 8,
        };
        let b = NilBasis::new(3, []).unwrap();
        assert!(matches!(
            entails(&b, &zero(&[(0, 1), (1, 1), (2, 1)]), &tight),
            Err(NilError::CapExceeded(_))
        ));
        let b4 = NilBasis::new(4, []).unwrap();
        assert!(matches!(
            entails(&b4, &zero(&[(0, 1)]), &tight),
            Err(NilError::CapExceeded(_))
        ));
        assert!(matches!(
            free_quotient(&b, 2, &tight),
            Err(NilError::CapExceeded(_))
        ));
    }
}
