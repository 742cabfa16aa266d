//! Finite-semigroup oracle: explicit Cayley tables and exhaustive identity
//! checking.
//!
//! This is the independent brute-force verifier for the entailment engine:
//! an identity claimed by `nilcalc` must hold under every substitution of
//! table elements, and a refuted identity must fail in the quotient table
//! itself. Tables are immutable after construction.

use crate::commwords::{Identity, Letter};
use crate::nilcalc::{Caps, FreeNilQuotient, NilError};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    NotAssociative { a: usize, b: usize, c: usize },
    /// A zero-equation was checked against a table without an absorbing
    /// element. Distinguished from refutation: the check is inapplicable.
    NoZeroElement,
    BadTable(String),
    CapExceeded(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::NotAssociative { a, b, c } => {
                write!(f, "not associative at ({a}, {b}, {c})")
            }
            ModelError::NoZeroElement => write!(f, "table has no zero element"),
            ModelError::BadTable(msg) => write!(f, "bad table: {msg}"),
            ModelError::CapExceeded(msg) => write!(f, "cap exceeded: {msg}"),
        }
    }
}

impl std::error::Error for ModelError {}

/// An explicit finite semigroup: an `n` by `n` multiplication table in
/// row-major order, with the absorbing element recorded when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    table: Vec<usize>,
    zero: Option<usize>,
}

/// Whether the raw table is associative; checks all n^3 triples.
pub fn check_associative(n: usize, table: &[usize]) -> bool {
    let at = |a: usize, b: usize| table[a * n + b];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return false;
                }
            }
        }
    }
    true
}

fn find_zero(n: usize, table: &[usize]) -> Option<usize> {
    (0..n).find(|&z| (0..n).all(|a| table[z * n + a] == z && table[a * n + z] == z))
}

impl CayleyTable {
    /// Validates the table: entries in range, associativity, and detects the
    /// absorbing element if present.
    pub fn new(n: usize, table: Vec<usize>) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::BadTable("empty table".into()));
        }
        if table.len() != n * n {
            return Err(ModelError::BadTable(format!(
                "expected {} entries, got {}",
                n * n,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&e| e >= n) {
            return Err(ModelError::BadTable(format!("entry {bad} out of range")));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = table[a * n + b];
                    let bc = table[b * n + c];
                    if table[ab * n + c] != table[a * n + bc] {
                        return Err(ModelError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let zero = find_zero(n, &table);
        Ok(CayleyTable { n, table, zero })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn rows(&self) -> &[usize] {
        &self.table
    }

    fn pow(&self, a: usize, e: u32) -> usize {
        let mut acc = a;
        for _ in 1..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Value of a word under an assignment of elements to the identity's
    /// letters. Letters combine in ascending order; the tables in use here
    /// are commutative, so the order is immaterial.
    fn eval_word(&self, exps: &[u32], assignment: &[usize]) -> usize {
        let mut acc: Option<usize> = None;
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let val = self.pow(assignment[i], e);
            acc = Some(match acc {
                None => val,
                Some(prev) => self.mul(prev, val),
            });
        }
        acc.expect("words are non-empty")
    }
}

/// Exhaustive identity check: every substitution of table elements must make
/// the two sides equal (or, for a zero-equation, make the word evaluate to
/// the absorbing element).
pub fn satisfies_in_table(t: &CayleyTable, id: &Identity) -> Result<bool, ModelError> {
    let id = id.canonical();
    let letters: Vec<Letter> = id.letters().into_iter().collect();
    let k = letters.len();
    let mut assignment = vec![0usize; k];

    let zero = match &id {
        Identity::ZeroEq(_) => Some(t.zero.ok_or(ModelError::NoZeroElement)?),
        Identity::Equal(..) => None,
    };

    let side_exps = |w: &crate::commwords::CommWord| -> Vec<u32> {
        letters.iter().map(|&l| w.exponent(l)).collect()
    };
    let (lhs_exps, rhs_exps) = match &id {
        Identity::Equal(u, v) => (side_exps(u), Some(side_exps(v))),
        Identity::ZeroEq(w) => (side_exps(w), None),
    };

    loop {
        let holds = match &rhs_exps {
            Some(rhs) => {
                t.eval_word(&lhs_exps, &assignment) == t.eval_word(rhs, &assignment)
            }
            None => t.eval_word(&lhs_exps, &assignment) == zero.unwrap(),
        };
        if !holds {
            return Ok(false);
        }
        // next assignment
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < t.n {
                break;
            }
            assignment[i] = 0;
        }
    }
}

/// Renders the quotient's class multiplication as an explicit table. The
/// zero class becomes the absorbing element.
pub fn quotient_to_table(q: &FreeNilQuotient, caps: &Caps) -> Result<CayleyTable, ModelError> {
    let n = q.class_count();
    if n.checked_mul(n).map_or(true, |sq| sq > caps.max_carrier) {
        return Err(ModelError::CapExceeded(format!(
            "{n}x{n} table exceeds the configured maximum"
        )));
    }
    let mut table = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = q.mul_classes(a as u32, b as u32) as usize;
        }
    }
    CayleyTable::new(n, table)
}

/// The (m+1)-element combinatorial cyclic monoid `{1, a, a^2, ..., a^m}`
/// with `a^m * a = a^m`; it generates the variety of commutative semigroups
/// satisfying `x^m = x^(m+1)`.
pub fn cyclic_monoid_table(m: u32) -> CayleyTable {
    let n = m as usize + 1;
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = (i + j).min(m as usize);
        }
    }
    CayleyTable::new(n, table).expect("cyclic monoid is associative")
}

/// Cap-related conversion of `NilError` for callers that mix both oracles.
impl From<NilError> for ModelError {
    fn from(e: NilError) -> Self {
        ModelError::CapExceeded(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commwords::CommWord;
    use crate::nilcalc::{entails, free_quotient, NilBasis};

    fn w(pairs: &[(u32, u32)]) -> CommWord {
        CommWord::from_pairs(pairs.iter().map(|&(l, e)| (Letter(l), e))).unwrap()
    }

    #[test]
    fn associativity_examples() {
        // two-element semilattice under meet
        assert!(check_associative(2, &[0, 0, 0, 1]));
        // left-zero semigroup: xy = x
        assert!(check_associative(2, &[0, 0, 1, 1]));
        // defective table
        assert!(!check_associative(2, &[1, 0, 0, 0]));
        assert!(matches!(
            CayleyTable::new(2, vec![1, 0, 0, 0]),
            Err(ModelError::NotAssociative { .. })
        ));
    }

    #[test]
    fn satisfies_examples() {
        let semilattice = CayleyTable::new(2, vec![0, 0, 0, 1]).unwrap();
        let idem = Identity::Equal(w(&[(0, 2)]), w(&[(0, 1)]));
        assert!(satisfies_in_table(&semilattice, &idem).unwrap());

        // free quotient of x^2 y = 0 with one generator: {x, x^2, 0}
        let basis = NilBasis::new(3, [Identity::ZeroEq(w(&[(0, 2), (1, 1)]))]).unwrap();
        let q = free_quotient(&basis, 1, &Caps::default()).unwrap();
        let t = quotient_to_table(&q, &Caps::default()).unwrap();
        assert_eq!(t.order(), 3);
        assert!(!satisfies_in_table(&t, &Identity::ZeroEq(w(&[(0, 2)]))).unwrap());

        // cyclic group of order 2 satisfies x^3 = x but has no zero
        let c2 = CayleyTable::new(2, vec![0, 1, 1, 0]).unwrap();
        assert!(satisfies_in_table(&c2, &Identity::Equal(w(&[(0, 3)]), w(&[(0, 1)]))).unwrap());
        assert_eq!(
            satisfies_in_table(&c2, &Identity::ZeroEq(w(&[(0, 1)]))),
            Err(ModelError::NoZeroElement)
        );
    }

    #[test]
    fn quotient_tables() {
        let l = NilBasis::new(2, []).unwrap();
        let q = free_quotient(&l, 2, &Caps::default()).unwrap();
        let t = quotient_to_table(&q, &Caps::default()).unwrap();
        assert_eq!(t.order(), 4);
        assert_eq!(t.zero(), Some(q.zero_class() as usize));

        let trivial = NilBasis::trivial();
        let q = free_quotient(&trivial, 1, &Caps::default()).unwrap();
        assert_eq!(quotient_to_table(&q, &Caps::default()).unwrap().order(), 1);
    }

    #[test]
    fn cyclic_monoid_examples() {
        let t = cyclic_monoid_table(1);
        assert_eq!(t.order(), 2);
        // identity element times itself, and a idempotent
        assert_eq!(t.mul(0, 0), 0);
        assert_eq!(t.mul(1, 1), 1);

        assert_eq!(cyclic_monoid_table(0).order(), 1);

        let t = cyclic_monoid_table(2);
        assert_eq!(t.order(), 3);
        assert_eq!(t.mul(2, 1), 2); // a^2 * a = a^2

        for m in 1..=5u32 {
            let t = cyclic_monoid_table(m);
            let holds = Identity::Equal(w(&[(0, m)]), w(&[(0, m + 1)]));
            assert!(satisfies_in_table(&t, &holds).unwrap());
            if m >= 2 {
                let fails = Identity::Equal(w(&[(0, m - 1)]), w(&[(0, m)]));
                assert!(!satisfies_in_table(&t, &fails).unwrap());
            }
        }
        // the 2-element cyclic monoid is a semilattice with identity
        let t = cyclic_monoid_table(1);
        assert!(satisfies_in_table(&t, &Identity::Equal(w(&[(0, 1)]), w(&[(0, 2)]))).unwrap());
    }

    #[test]
    fn oracle_agrees_with_entailment_on_small_cases() {
        let caps = Caps::default();
        let basis = NilBasis::new(
            3,
            [Identity::Equal(w(&[(0, 2), (1, 1)]), w(&[(0, 1), (1, 2)]))],
        )
        .unwrap();
        let probes = [
            Identity::ZeroEq(w(&[(0, 2), (1, 1)])),
            Identity::ZeroEq(w(&[(0, 2), (1, 2)])),
            Identity::Equal(w(&[(0, 2), (1, 1)]), w(&[(0, 1), (1, 2)])),
            Identity::Equal(w(&[(0, 1), (1, 1)]), w(&[(0, 2)])),
        ];
        for probe in &probes {
            let k = probe.letter_count() as u32;
            let q = free_quotient(&basis, k, &caps).unwrap();
            let t = quotient_to_table(&q, &caps).unwrap();
            assert_eq!(
                entails(&basis, probe, &caps).unwrap(),
                satisfies_in_table(&t, probe).unwrap(),
                "oracle disagreement on {probe}"
            );
        }
    }
}
