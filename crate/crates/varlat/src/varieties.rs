//! Commutative varieties in decomposed form, the catalog of nil
//! subvarieties, variety invariants, joins and meets, and the
//! special-element classification.
//!
//! Every periodic commutative variety decomposes as a join of an Abelian
//! periodic group variety (identified with its exponent `d`), a cyclic
//! monoid variety `C_m` (identified with its index `m`), and a nil part.
//! `COM`, the variety of all commutative semigroups, is kept as a separate
//! token. Descriptors are immutable and all operations are pure.

use crate::commwords::{CommWord, Identity, Letter};
use crate::models::{cyclic_monoid_table, satisfies_in_table};
use crate::nilcalc::{degree, entails, nil_subvariety, Caps, Degree, NilBasis, NilError};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietyError {
    /// An invariant was requested that only periodic varieties have.
    NotPeriodic,
    /// Equality, join or meet was requested outside the canonical domain.
    NonCanonical(String),
    /// The operation would leave the supported catalog of nil parts.
    Unsupported(String),
    InvalidIndex(String),
    Nil(NilError),
}

impl fmt::Display for VarietyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyError::NotPeriodic =>

                write!(f, "the variety of all commutative semigroups is not periodic"),
            VarietyError::NonCanonical(d) => write!(f, "descriptor is not canonical: {d}"),
            VarietyError::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            VarietyError::InvalidIndex(msg) => write!(f, "invalid catalog index: {msg}"),
            VarietyError::Nil(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for VarietyError {}

impl From<NilError> for VarietyError {
    fn from(e: NilError) -> Self {
        VarietyError::Nil(e)
    }
}

/// The four parametric chains of the catalog, in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Column {
    L,
    K,
    J,
    I,
}

impl Column {
    pub const ALL: [Column; 4] = [Column::L, Column::K, Column::J, Column::I];

    fn name(self) -> &'static str {
        match self {
            Column::L => "L",
            Column::K => "K",
            Column::J => "J",
            Column::I => "I",
        }
    }

    /// Smallest admissible finite index in this column.
    pub fn min_index(self) -> u32 {
        match self {
            Column::L => 1,
            Column::K => 3,
            Column::J | Column::I => 4,
        }
    }
}

/// A chain position: finite, or the top of the column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogIndex {
    Fin(u32),
    Omega,
}

impl PartialOrd for CatalogIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CatalogIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use CatalogIndex::*;
        match (self, other) {
            (Fin(a), Fin(b)) => a.cmp(b),
            (Fin(_), Omega) => std::cmp::Ordering::Less,
            (Omega, Fin(_)) => std::cmp::Ordering::Greater,
            (Omega, Omega) => std::cmp::Ordering::Equal,
        }
    }
}

/// A node of the catalog lattice: a column and a position in it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CatalogElement {
    column: Column,
    index: CatalogIndex,
}

impl CatalogElement {
    pub fn new(column: Column, index: CatalogIndex) -> Result<Self, VarietyError> {
        if let CatalogIndex::Fin(n) = index {
            if n < column.min_index() {
                return Err(VarietyError::InvalidIndex(format!(
                    "{}_{} (column {} starts at {})",
                    column.name(),
                    n,
                    column.name(),
                    column.min_index()
                )));
            }
        }
        Ok(CatalogElement { column, index })
    }

    pub fn top(column: Column) -> Self {
        CatalogElement {
            column,
            index: CatalogIndex::Omega,
        }
    }

    /// The trivial variety, the bottom of the catalog.
    pub fn trivial() -> Self {
        CatalogElement {
            column: Column::L,
            index: CatalogIndex::Fin(1),
        }
    }

    pub fn column(&self) -> Column {
        self.column
    }

    pub fn index(&self) -> CatalogIndex {
        self.index
    }
}

impl fmt::Display for CatalogElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            CatalogIndex::Omega => write!(f, "{}", self.column.name()),
            CatalogIndex::Fin(1) => write!(f, "T"),
            CatalogIndex::Fin(n) => write!(f, "{}_{}", self.column.name(), n),
        }
    }
}

fn xx_y() -> Identity {
    // x^2 y = 0
    Identity::ZeroEq(CommWord::from_pairs([(Letter(0), 2), (Letter(1), 1)]).unwrap())
}

fn xx_yz() -> Identity {
    // x^2 y z = 0
    Identity::ZeroEq(
        CommWord::from_pairs([(Letter(0), 2), (Letter(1), 1), (Letter(2), 1)]).unwrap(),
    )
}

fn xxy_eq_xyy() -> Identity {
    Identity::Equal(
        CommWord::from_pairs([(Letter(0), 2), (Letter(1), 1)]).unwrap(),
        CommWord::from_pairs([(Letter(0), 1), (Letter(1), 2)]).unwrap(),
    )
}

fn square_zero() -> Identity {
    Identity::ZeroEq(CommWord::power(Letter(0), 2))
}

fn cube_zero() -> Identity {
    Identity::ZeroEq(CommWord::power(Letter(0), 3))
}

fn product_zero(n: u32) -> Identity {
    Identity::ZeroEq(CommWord::product_of_distinct(n))
}

/// The defining presentation of a catalog element.
pub fn catalog_basis(e: CatalogElement) -> NilBasis {
    let mut ids: Vec<Identity> = Vec::new();
    let p = match e.column {
        Column::L => {
            if e.index == CatalogIndex::Fin(1) {
                return NilBasis::trivial();
            }
            ids.push(square_zero());
            2
        }
        Column::K => {
            ids.push(xx_y());
            3
        }
        Column::J => {
            ids.push(xxy_eq_xyy());
            ids.push(xx_yz());
            ids.push(cube_zero());
            3
        }
        Column::I => {
            ids.push(xxy_eq_xyy());
            ids.push(xx_yz());
            4
        }
    };
    if let CatalogIndex::Fin(n) = e.index {
        ids.push(product_zero(n));
    }
    NilBasis::new(p, ids).expect("catalog exponents are positive")
}

/// Catalog order: compare columns and indices componentwise.
pub fn catalog_leq(a: CatalogElement, b: CatalogElement) -> bool {
    a.column <= b.column && a.index <= b.index
}

/// Componentwise least upper bound. The result always satisfies the column
/// minimum-index constraints; see the closure tests.
pub fn catalog_join(a: CatalogElement, b: CatalogElement) -> CatalogElement {
    CatalogElement {
        column: a.column.max(b.column),
        index: a.index.max(b.index),
    }
}

/// Componentwise greatest lower bound.
pub fn catalog_meet(a: CatalogElement, b: CatalogElement) -> CatalogElement {
    CatalogElement {
        column: a.column.min(b.column),
        index: a.index.min(b.index),
    }
}

/// All catalog elements with finite index at most `max_index`, plus the four
/// column tops.
pub fn catalog_elements(max_index: u32) -> Vec<CatalogElement> {
    let mut out = Vec::new();
    for col in Column::ALL {
        for n in col.min_index()..=max_index {
            out.push(CatalogElement::new(col, CatalogIndex::Fin(n)).unwrap());
        }
        out.push(CatalogElement::top(col));
    }
    out
}

/// The nil part of a decomposed variety: a catalog node or an explicit
/// presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NilPart {
    Catalog(CatalogElement),
    Based(NilBasis),
}

impl NilPart {
    pub fn trivial() -> Self {
        NilPart::Catalog(CatalogElement::trivial())
    }

    pub fn basis(&self) -> NilBasis {
        match self {
            NilPart::Catalog(e) => catalog_basis(*e),
            NilPart::Based(b) => b.clone(),
        }
    }

    pub fn entails(&self, id: &Identity, caps: &Caps) -> Result<bool, NilError> {
        entails(&self.basis(), id, caps)
    }

    /// Containment of the presented nil-varieties. A structural fast path
    /// covers catalog pairs; the catalog order agrees with entailment (this
    /// is separately verified by the acceptance suite).
    pub fn subvariety(a: &NilPart, b: &NilPart, caps: &Caps) -> Result<bool, NilError> {
        if let (NilPart::Catalog(x), NilPart::Catalog(y)) = (a, b) {
            return Ok(catalog_leq(*x, *y));
        }
        nil_subvariety(&a.basis(), &b.basis(), caps)
    }

    pub fn equal(a: &NilPart, b: &NilPart, caps: &Caps) -> Result<bool, NilError> {
        if let (NilPart::Catalog(x), NilPart::Catalog(y)) = (a, b) {
            return Ok(x == y);
        }
        Ok(NilPart::subvariety(a, b, caps)? && NilPart::subvariety(b, a, caps)?)
    }

    /// Least nil exponent entailed by the presentation.
    pub fn least_exponent(&self, caps: &Caps) -> Result<u32, NilError> {
        let basis = self.basis();
        for q in 1..basis.nil_exponent() {
            if entails(&basis, &Identity::ZeroEq(CommWord::power(Letter(0), q)), caps)? {
                return Ok(q);
            }
        }
        Ok(basis.nil_exponent())
    }
}

impl fmt::Display for NilPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NilPart::Catalog(e) => write!(f, "{e}"),
            NilPart::Based(b) => write!(f, "{b}"),
        }
    }
}

/// Identifies an explicit presentation with a catalog element when the
/// presented variety lies under the catalog's largest member and its degree
/// is within the letter cap. Returns `None` when it does not resolve.
pub fn resolve_catalog(basis: &NilBasis, caps: &Caps) -> Result<Option<CatalogElement>, NilError> {
    let i_top = catalog_basis(CatalogElement::top(Column::I));
    if !nil_subvariety(basis, &i_top, caps)? {
        return Ok(None);
    }
    let column = if nil_subvariety(basis, &catalog_basis(CatalogElement::top(Column::L)), caps)? {
        Column::L
    } else if nil_subvariety(basis, &catalog_basis(CatalogElement::top(Column::K)), caps)? {
        Column::K
    } else if nil_subvariety(basis, &catalog_basis(CatalogElement::top(Column::J)), caps)? {
        Column::J
    } else {
        Column::I
    };
    let index = match degree(basis, caps.max_letters, caps)? {
        Degree::Exact(n) => CatalogIndex::Fin(n),
        Degree::AboveBound(_) => CatalogIndex::Omega,
    };
    let Ok(candidate) = CatalogElement::new(column, index) else {
        return Ok(None);
    };
    let cand_basis = catalog_basis(candidate);
    if nil_subvariety(basis, &cand_basis, caps)? && nil_subvariety(&cand_basis, basis, caps)? {
        Ok(Some(candidate))
    } else {
        Ok(None)
    }
}

fn to_catalog(part: &NilPart, caps: &Caps) -> Result<Option<CatalogElement>, NilError> {
    match part {
        NilPart::Catalog(e) => Ok(Some(*e)),
        NilPart::Based(b) => resolve_catalog(b, caps),
    }
}

/// Join of nil parts. Comparable parts short-circuit; otherwise both sides
/// must resolve into the catalog, where the join is componentwise.
pub fn nil_join(a: &NilPart, b: &NilPart, caps: &Caps) -> Result<NilPart, VarietyError> {
    if NilPart::subvariety(a, b, caps)? {
        return Ok(b.clone());
    }
    if NilPart::subvariety(b, a, caps)? {
        return Ok(a.clone());
    }
    match (to_catalog(a, caps)?, to_catalog(b, caps)?) {
        (Some(x), Some(y)) => Ok(NilPart::Catalog(catalog_join(x, y))),
        _ => Err(VarietyError::Unsupported(format!(
            "join of nil parts {a} and {b} leaves the catalog"
        ))),
    }
}

/// Meet of nil parts: union of the presentations, with the smaller nil
/// exponent. Catalog pairs stay in the catalog.
pub fn nil_meet(a: &NilPart, b: &NilPart, caps: &Caps) -> Result<NilPart, VarietyError> {
    if let (NilPart::Catalog(x), NilPart::Catalog(y)) = (a, b) {
        return Ok(NilPart::Catalog(catalog_meet(*x, *y)));
    }
    let ba = a.basis();
    let bb = b.basis();
    let p = ba.nil_exponent().min(bb.nil_exponent());
    let ids: Vec<Identity> = ba.identities().chain(bb.identities()).cloned().collect();
    let union = NilBasis::new(p, ids).expect("exponent stays positive");
    match resolve_catalog(&union, caps)? {
        Some(e) => Ok(NilPart::Catalog(e)),
        None => Ok(NilPart::Based(union)),
    }
}

/// A commutative variety: the top element `Com`, or a join
/// `G(d) ∨ C_m ∨ N` in decomposed form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VarietyDesc {
    Com,
    Composite {
        /// Exponent of the Abelian periodic group part; 1 is the trivial group.
        group: u32,
        /// Index of the cyclic monoid part; 0 is trivial, 1 is semilattices.
        monoid: u32,
        nil: NilPart,
    },
}

impl VarietyDesc {
    pub fn composite(group: u32, monoid: u32, nil: NilPart) -> Self {
        assert!(group >= 1, "group exponent is at least 1");
        VarietyDesc::Composite { group, monoid, nil }
    }

    pub fn trivial() -> Self {
        Self::composite(1, 0, NilPart::trivial())
    }

    pub fn semilattice() -> Self {
        Self::composite(1, 1, NilPart::trivial())
    }

    pub fn nil(part: NilPart) -> Self {
        Self::composite(1, 0, part)
    }
}

impl fmt::Display for VarietyDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyDesc::Com => write!(f, "COM"),
            VarietyDesc::Composite { group, monoid, nil } => {
                write!(f, "G({group}) + C({monoid}) + {nil}")
            }
        }
    }
}

/// Whether the identity holds in an Abelian group variety of the given
/// exponent: the two sides must agree letterwise modulo `d`. Zero-equations
/// hold only in the trivial group.
fn group_satisfies(d: u32, id: &Identity) -> bool {
    match id {
        Identity::Equal(u, v) => {
            let letters: Vec<Letter> = u.content().union(&v.content()).copied().collect();
            letters
                .into_iter()
                .all(|l| u.exponent(l) % d == v.exponent(l) % d)
        }
        Identity::ZeroEq(_) => d == 1,
    }
}

impl VarietyDesc {
    /// Whether the identity holds in the described variety. A join
    /// satisfies an identity exactly when all three components do; the
    /// monoid component is checked exhaustively in its generating table.
    pub fn satisfies(&self, id: &Identity, caps: &Caps) -> Result<bool, VarietyError> {
        let id = id.canonical();
        match self {
            VarietyDesc::Com => Ok(id.is_trivial()),
            VarietyDesc::Composite { group, monoid, nil } => {
                if !group_satisfies(*group, &id) {
                    return Ok(false);
                }
                let table = cyclic_monoid_table(*monoid);
                let in_monoid = satisfies_in_table(&table, &id)
                    .expect("cyclic monoid tables always have a zero");
                if !in_monoid {
                    return Ok(false);
                }
                Ok(nil.entails(&id, caps)?)
            }
        }
    }

    /// Exponent of the greatest group subvariety.
    pub fn group_exponent(&self) -> Result<u32, VarietyError> {
        match self {
            VarietyDesc::Com => Err(VarietyError::NotPeriodic),
            VarietyDesc::Composite { group, .. } => Ok(*group),
        }
    }

    /// The largest `m` such that the cyclic monoid variety of index `m` is
    /// contained in the described variety.
    pub fn monoid_index(&self) -> Result<u32, VarietyError> {
        match self {
            VarietyDesc::Com => Err(VarietyError::NotPeriodic),
            VarietyDesc::Composite { monoid, .. } => Ok(*monoid),
        }
    }

    /// `monoid_index` with an independent cross-check: the probe identity
    /// `x^m y^p = x^(m+d) y^p` holds in the described variety but fails in
    /// the cyclic monoid of index m+1 (at the assignment x -> a, y -> 1),
    /// so no larger cyclic monoid variety fits.
    pub fn monoid_index_verified(&self, caps: &Caps) -> Result<u32, VarietyError> {
        let (d, m, nil) = match self {
            VarietyDesc::Com => return Err(VarietyError::NotPeriodic),
            VarietyDesc::Composite { group, monoid, nil } => (*group, *monoid, nil),
        };
        let p = nil.basis().nil_exponent();
        let lhs = CommWord::from_pairs([(Letter(0), m), (Letter(1), p)]).unwrap();
        let rhs = CommWord::from_pairs([(Letter(0), m + d), (Letter(1), p)]).unwrap();
        let probe = Identity::Equal(lhs, rhs);
        if !self.satisfies(&probe, caps)? {
            return Err(VarietyError::Unsupported(
                "monoid index probe unexpectedly fails in the variety".into(),
            ));
        }
        let refuted = !satisfies_in_table(&cyclic_monoid_table(m + 1), &probe)
            .expect("cyclic monoid tables always have a zero");
        if !refuted {
            return Err(VarietyError::Unsupported(
                "monoid index probe fails to separate the next cyclic monoid".into(),
            ));
        }
        Ok(m)
    }

    /// Nilpotency degree of the nil component, searched up to `bound`.
    pub fn degree_of(&self, bound: u32, caps: &Caps) -> Result<VarietyDegree, VarietyError> {
        match self {
            VarietyDesc::Com => Ok(VarietyDegree::Infinite),
            VarietyDesc::Composite { nil, .. } => Ok(match degree(&nil.basis(), bound, caps)? {
                Degree::Exact(n) => VarietyDegree::Exact(n),
                Degree::AboveBound(b) => VarietyDegree::AboveBound(b),
            }),
        }
    }

    /// Whether the descriptor lies in the canonical domain, where the three
    /// components are exactly the invariants of the described variety:
    /// either the group and monoid parts are trivial enough (d = 1, m <= 1),
    /// or m <= 2 with the nil part containing the greatest nil subvariety
    /// of C_m and contained in the largest catalog column with x^2 y = 0.
    pub fn is_canonical(&self, caps: &Caps) -> Result<bool, VarietyError> {
        match self {
            VarietyDesc::Com => Ok(true),
            VarietyDesc::Composite { group, monoid, nil } => {
                if *group == 1 && *monoid <= 1 {
                    return Ok(true);
                }
                if *monoid > 2 {
                    return Ok(false);
                }
                if !nil.entails(&xx_y(), caps)? {
                    return Ok(false);
                }
                if *monoid == 2 {
                    // the nil part must contain the square-zero variety
                    let l_top = NilPart::Catalog(CatalogElement::top(Column::L));
                    return Ok(NilPart::subvariety(&l_top, nil, caps)?);
                }
                Ok(true)
            }
        }
    }

    /// Variety-preserving normalization: when m = 2 the nil part absorbs the
    /// square-zero variety, which is already contained in the monoid part.
    /// Descriptors that cannot be normalized are returned unchanged.
    pub fn normalized(&self, caps: &Caps) -> Result<VarietyDesc, VarietyError> {
        match self {
            VarietyDesc::Composite { group, monoid, nil } if *monoid == 2 => {
                let l_top = NilPart::Catalog(CatalogElement::top(Column::L));
                match nil_join(nil, &l_top, caps) {
                    Ok(n2) => Ok(VarietyDesc::Composite {
                        group: *group,
                        monoid: *monoid,
                        nil: n2,
                    }),
                    Err(VarietyError::Unsupported(_)) => Ok(self.clone()),
                    Err(e) => Err(e),
                }
            }
            _ => Ok(self.clone()),
        }
    }

    fn require_canonical(&self, caps: &Caps) -> Result<(), VarietyError> {
        if self.is_canonical(caps)? {
            Ok(())
        } else {
            Err(VarietyError::NonCanonical(self.to_string()))
        }
    }

    /// Semantic equality of canonical descriptors: componentwise, with nil
    /// parts compared by mutual containment.
    pub fn equal(&self, other: &VarietyDesc, caps: &Caps) -> Result<bool, VarietyError> {
        match (self, other) {
            (VarietyDesc::Com, VarietyDesc::Com) => Ok(true),
            (VarietyDesc::Com, _) | (_, VarietyDesc::Com) => Ok(false),
            (
                VarietyDesc::Composite { group: d1, monoid: m1, nil: n1 },
                VarietyDesc::Composite { group: d2, monoid: m2, nil: n2 },
            ) => {
                self.require_canonical(caps)?;
                other.require_canonical(caps)?;
                Ok(d1 == d2 && m1 == m2 && NilPart::equal(n1, n2, caps)?)
            }
        }
    }

    /// Containment of canonical descriptors: divisibility of group
    /// exponents, ordering of monoid indices, containment of nil parts.
    pub fn leq(&self, other: &VarietyDesc, caps: &Caps) -> Result<bool, VarietyError> {
        match (self, other) {
            (_, VarietyDesc::Com) => Ok(true),
            (VarietyDesc::Com, _) => Ok(false),
            (
                VarietyDesc::Composite { group: d1, monoid: m1, nil: n1 },
                VarietyDesc::Composite { group: d2, monoid: m2, nil: n2 },
            ) => {
                self.require_canonical(caps)?;
                other.require_canonical(caps)?;
                Ok(d2 % d1 == 0 && m1 <= m2 && NilPart::subvariety(n1, n2, caps)?)
            }
        }
    }

    /// Join of canonical descriptors; `Com` absorbs.
    pub fn join(&self, other: &VarietyDesc, caps: &Caps) -> Result<VarietyDesc, VarietyError> {
        match (self, other) {
            (VarietyDesc::Com, _) | (_, VarietyDesc::Com) => Ok(VarietyDesc::Com),
            (
                VarietyDesc::Composite { group: d1, monoid: m1, nil: n1 },
                VarietyDesc::Composite { group: d2, monoid: m2, nil: n2 },
            ) => {
                self.require_canonical(caps)?;
                other.require_canonical(caps)?;
                Ok(VarietyDesc::Composite {
                    group: lcm(*d1, *d2),
                    monoid: (*m1).max(*m2),
                    nil: nil_join(n1, n2, caps)?,
                })
            }
        }
    }

    /// Meet of canonical descriptors; `Com` is the identity.
    pub fn meet(&self, other: &VarietyDesc, caps: &Caps) -> Result<VarietyDesc, VarietyError> {
        match (self, other) {
            (VarietyDesc::Com, v) | (v, VarietyDesc::Com) => Ok(v.clone()),
            (
                VarietyDesc::Composite { group: d1, monoid: m1, nil: n1 },
                VarietyDesc::Composite { group: d2, monoid: m2, nil: n2 },
            ) => {
                self.require_canonical(caps)?;
                other.require_canonical(caps)?;
                Ok(VarietyDesc::Composite {
                    group: gcd(*d1, *d2),
                    monoid: (*m1).min(*m2),
                    nil: nil_meet(n1, n2, caps)?,
                })
            }
        }
    }

    /// Decides the special-element properties of the described variety in
    /// the lattice of commutative varieties.
    ///
    /// The decision is exact on every descriptor, canonical or not: the
    /// monoid index of the described variety equals the `m` component, the
    /// greatest group subvariety of a group-plus-combinatorial join is the
    /// group part, and the nil component is contained in the greatest nil
    /// subvariety. So a descriptor with m >= 3, or with d >= 2, or whose
    /// nil component refutes the defining identity of a form, cannot
    /// secretly denote a variety of that form.
    pub fn classify(&self, caps: &Caps) -> Result<ClassReport, VarietyError> {
        match self {
            VarietyDesc::Com => Ok(ClassReport {
                upper_modular: true,
                codistributive: true,
                costandard: true,
                neutral: false,
                modular: ModularStatus::Top,
                matched_clause: Some(Clause::I),
            }),
            VarietyDesc::Composite { group, monoid, nil } => {
                let nil_under_k = nil.entails(&xx_y(), caps)?;
                let nil_under_i =
                    nil.entails(&xx_yz(), caps)? && nil.entails(&xxy_eq_xyy(), caps)?;
                let clause_ii = *group == 1 && *monoid <= 1 && nil_under_i;
                let clause_iii = *monoid <= 2 && nil_under_k;
                let upper_modular = clause_ii || clause_iii;
                Ok(ClassReport {
                    upper_modular,
                    codistributive: upper_modular,
                    costandard: clause_ii,
                    neutral: *group == 1 && *monoid <= 1 && nil_under_k,
                    modular: if *group > 1 || *monoid >= 2 {
                        ModularStatus::No
                    } else {
                        ModularStatus::NecessaryConditionHolds
                    },
                    matched_clause: if clause_ii {
                        Some(Clause::II)
                    } else if clause_iii {
                        Some(Clause::III)
                    } else {
                        None
                    },
                })
            }
        }
    }
}

/// Degree of a variety descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarietyDegree {
    Exact(u32),
    AboveBound(u32),
    Infinite,
}

/// Which clause of the classification matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    I,
    II,
    III,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::I => write!(f, "(i)"),
            Clause::II => write!(f, "(ii)"),
            Clause::III => write!(f, "(iii)"),
        }
    }
}

/// Modularity is only partially decided: a failed necessary condition is a
/// definite no, the top element is modular, and everything else is left as
/// "necessary condition holds".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModularStatus {
    No,
    NecessaryConditionHolds,
    Top,
}

/// Outcome of the special-element classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassReport {
    pub upper_modular: bool,
    pub codistributive: bool,
    pub costandard: bool,
    pub neutral: bool,
    pub modular: ModularStatus,
    pub matched_clause: Option<Clause>,
}

fn gcd(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// Searches for a witness exponent `t <= t_max` making the degree-`n`
/// absorption identity `x1...xn = (x1...xn)^(t+1)` hold in the variety.
/// For descriptors with monoid index at most 1 this succeeds exactly when
/// the nil component is nilpotent of degree at most `n`.
pub fn degree_witness(
    v: &VarietyDesc,
    n: u32,
    t_max: u32,
    caps: &Caps,
) -> Result<Option<u32>, VarietyError> {
    for t in 1..=t_max {
        let lhs = CommWord::product_of_distinct(n);
        let rhs = CommWord::from_pairs((0..n).map(|i| (Letter(i), t + 1))).unwrap();
        if v.satisfies(&Identity::Equal(lhs, rhs), caps)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}
