//! Commutative words as exponent vectors, identities between them, and the
//! word-embedding relation.
//!
//! A word is a non-empty multiset of letters; multiplication adds exponent
//! maps. Two words are equal exactly when their maps are equal, so the
//! commutative law is built into the representation. Everything here is
//! immutable and pure, hence freely shareable across threads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A variable symbol, identified by a small index.
///
/// Rendering uses `x, y, z` while a word needs at most three letters and
/// `x1, x2, ...` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> u32 {
        self.0
    }
}

/// Error returned by [`CommWord::substitute`] when a letter of the word has
/// no image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MissingImage(pub Letter);

impl fmt::Display for MissingImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no image for letter #{}", self.0 .0)
    }
}

impl std::error::Error for MissingImage {}

/// A non-empty commutative word: letter -> multiplicity, every multiplicity
/// at least one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CommWord {
    exps: BTreeMap<Letter, u32>,
}

impl CommWord {
    /// Builds a word from letter/multiplicity pairs. Zero multiplicities are
    /// dropped and duplicates add up; returns `None` if nothing remains.
    pub fn from_pairs<I: IntoIterator<Item = (Letter, u32)>>(pairs: I) -> Option<Self> {
        let mut exps: BTreeMap<Letter, u32> = BTreeMap::new();
        for (l, e) in pairs {
            if e > 0 {
                *exps.entry(l).or_insert(0) += e;
            }
        }
        if exps.is_empty() {
            None
        } else {
            Some(CommWord { exps })
        }
    }

    /// The word `l^e`. Panics if `e == 0`.
    pub fn power(l: Letter, e: u32) -> Self {
        assert!(e > 0, "a word must be non-empty");
        let mut exps = BTreeMap::new();
        exps.insert(l, e);
        CommWord { exps }
    }

    pub fn letter(l: Letter) -> Self {
        Self::power(l, 1)
    }

    /// The squarefree word `x1 x2 ... xn` on the first `n` letters.
    pub fn product_of_distinct(n: u32) -> Self {
        assert!(n > 0, "a word must be non-empty");
        CommWord {
            exps: (0..n).map(|i| (Letter(i), 1)).collect(),
        }
    }

    pub fn exponent(&self, l: Letter) -> u32 {
        self.exps.get(&l).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Letter, u32)> + '_ {
        self.exps.iter().map(|(&l, &e)| (l, e))
    }

    /// The set of letters occurring in the word.
    pub fn content(&self) -> BTreeSet<Letter> {
        self.exps.keys().copied().collect()
    }

    pub fn letter_count(&self) -> usize {
        self.exps.len()
    }

    /// The length of the word: the sum of all multiplicities.
    pub fn length(&self) -> u32 {
        self.exps.values().sum()
    }

    /// Free commutative multiplication: pointwise sum of exponent maps.
    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps.clone();
        for (&l, &e) in &other.exps {
            *exps.entry(l).or_insert(0) += e;
        }
        CommWord { exps }
    }

    /// Applies a substitution; every letter of the word must have an image.
    pub fn substitute(
        &self,
        images: &BTreeMap<Letter, CommWord>,
    ) -> Result<CommWord, MissingImage> {
        let mut exps: BTreeMap<Letter, u32> = BTreeMap::new();
        for (&l, &mult) in &self.exps {
            let img = images.get(&l).ok_or(MissingImage(l))?;
            for (m, e) in img.iter() {
                *exps.entry(m).or_insert(0) += mult * e;
            }
        }
        Ok(CommWord { exps })
    }

    /// Multiplicities in decreasing order; a complete invariant of the word
    /// up to renaming of letters.
    pub fn exponent_profile(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.exps.values().copied().collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// The same word with letters renamed to `0..k`, largest exponent first.
    pub fn canonical(&self) -> CommWord {
        CommWord {
            exps: self
                .exponent_profile()
                .into_iter()
                .enumerate()
                .map(|(i, e)| (Letter(i as u32), e))
                .collect(),
        }
    }
}

/// Chooses display names for a set of letters: `x, y, z` when three or fewer
/// are needed, `x1..xk` otherwise. Injective for a fixed letter set.
fn letter_names(letters: &BTreeSet<Letter>) -> BTreeMap<Letter, String> {
    if letters.len() <= 3 {
        let pool = ["x", "y", "z"];
        letters
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, pool[i].to_string()))
            .collect()
    } else {
        letters
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, format!("x{}", i + 1)))
            .collect()
    }
}

fn write_word(
    f: &mut fmt::Formatter<'_>,
    w: &CommWord,
    names: &BTreeMap<Letter, String>,
) -> fmt::Result {
    for (i, (l, e)) in w.iter().enumerate() {
        if i > 0 {
            write!(f, "*")?;
        }
        write!(f, "{}", names[&l])?;
        if e > 1 {
            write!(f, "^{}", e)?;
        }
    }
    Ok(())
}

impl fmt::Display for CommWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self, &letter_names(&self.content()))
    }
}

/// An identity between commutative words. `ZeroEq(w)` abbreviates the system
/// `wx = xw = w` for a fresh letter `x`, i.e. "w equals the zero element".
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    Equal(CommWord, CommWord),
    ZeroEq(CommWord),
}

impl Identity {
    /// An `Equal` identity with syntactically equal sides. Permitted, but it
    /// carries no content.
    pub fn is_trivial(&self) -> bool {
        matches!(self, Identity::Equal(u, v) if u == v)
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        match self {
            Identity::Equal(u, v) => u.content().union(&v.content()).copied().collect(),
            Identity::ZeroEq(w) => w.content(),
        }
    }

    pub fn letter_count(&self) -> usize {
        self.letters().len()
    }

    /// Renames letters to `0..k` so that identities differing only by a
    /// renaming (or by swapping the sides of an equation) become equal.
    ///
    /// Letters are ordered by their pair of multiplicities on the two sides;
    /// letters with equal pairs are interchangeable, so the result does not
    /// depend on how ties are broken.
    pub fn canonical(&self) -> Identity {
        match self {
            Identity::ZeroEq(w) => Identity::ZeroEq(w.canonical()),
            Identity::Equal(u, v) => {
                let a = orient(u, v);
                let b = orient(v, u);
                if a <= b {
                    Identity::Equal(a.0, a.1)
                } else {
                    Identity::Equal(b.0, b.1)
                }
            }
        }
    }
}

/// Canonical relabeling of the pair `(u, v)` taken in this orientation.
fn orient(u: &CommWord, v: &CommWord) -> (CommWord, CommWord) {
    let letters: BTreeSet<Letter> = u.content().union(&v.content()).copied().collect();
    let mut sigs: Vec<(u32, u32)> = letters
        .iter()
        .map(|&l| (u.exponent(l), v.exponent(l)))
        .collect();
    sigs.sort_unstable_by(|a, b| b.cmp(a));
    let mut ue = BTreeMap::new();
    let mut ve = BTreeMap::new();
    for (i, (eu, ev)) in sigs.into_iter().enumerate() {
        if eu > 0 {
            ue.insert(Letter(i as u32), eu);
        }
        if ev > 0 {
            ve.insert(Letter(i as u32), ev);
        }
    }
    (CommWord { exps: ue }, CommWord { exps: ve })
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = letter_names(&self.letters());
        match self {
            Identity::Equal(u, v) => {
                write_word(f, u, &names)?;
                write!(f, " = ")?;
                write_word(f, v, &names)
            }
            Identity::ZeroEq(w) => {
                write_word(f, w, &names)?;
                write!(f, " = 0")
            }
        }
    }
}

/// Whether some substitution with non-empty commutative images sends `u`
/// under `v` componentwise. The leftover exponents of `v` play the role of
/// the surrounding context, so `embeds(u, u)` holds via the identity
/// substitution with empty context.
pub fn embeds(u: &CommWord, v: &CommWord) -> bool {
    if u.length() > v.length() {
        return false;
    }
    let vletters: Vec<Letter> = v.content().into_iter().collect();
    let mut budget: Vec<u32> = vletters.iter().map(|&l| v.exponent(l)).collect();
    let mults: Vec<u32> = u.iter().map(|(_, e)| e).collect();
    assign(&mults, &mut budget)
}

/// Tries to pick a non-zero image for each remaining multiplicity so that
/// the scaled images fit in the budget.
fn assign(mults: &[u32], budget: &mut Vec<u32>) -> bool {
    let Some((&a, rest)) = mults.split_first() else {
        return true;
    };
    let mut image = vec![0u32; budget.len()];
    pick(a, rest, budget, &mut image, 0, false)
}

fn pick(a: u32, rest: &[u32], budget: &mut Vec<u32>, image: &mut [u32], coord: usize, nonzero: bool) -> bool {
    if coord == budget.len() {
        return nonzero && assign(rest, budget);
    }
    let max = budget[coord] / a;
    for c in 0..=max {
        image[coord] = c;
        budget[coord] -= a * c;
        let ok = pick(a, rest, budget, image, coord + 1, nonzero || c > 0);
        budget[coord] += a * c;
        image[coord] = 0;
        if ok {
            return true;
        }
    }
    false
}
