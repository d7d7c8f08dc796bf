//! Exact group-algebra arithmetic and dense matrices over it.
//!
//! Two ambient group algebras are supported. The welded ambient of rank m
//! holds elements of the braid-symmetric group on σ_1..σ_{m−1},
//! τ_1..τ_{m−1}; an element is canonicalized by its action on the free
//! group of rank m, which is faithful there, so two words name the same
//! element exactly when their automorphisms agree. The semidirect ambient
//! of rank n holds elements of F_n ⋊ P, where F_n is free on x_1..x_n and P
//! is the basis-conjugating group on ξ_{i,j}, 1 ≤ i ≠ j ≤ n; an element is
//! the pair (reduced free word, automorphism by which the P-part acts by
//! conjugation on the left), multiplied by
//!
//! ```text
//! (w1, g1) · (w2, g2) = (w1 · g1(w2), g1 g2).
//! ```
//!
//! Every canonical element carries a witness word, which records how the
//! element was spelled. Witnesses are bookkeeping for display and JSON
//! output only: equality, ordering, and hashing ignore them.
//!
//! An algebra element is a finite sum of canonical elements with Laurent
//! polynomial coefficients. Two augmentations produce scalar matrices from
//! symbolic ones: the all-to-one map on the welded ambient, and the map on
//! the semidirect ambient sending x_k ↦ t_k and the automorphism part to 1.
//! Both are ring homomorphisms, which is what justifies evaluating a
//! verified symbolic identity into a Laurent identity.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::laurent::{LaurentPoly, Param};
use crate::presentations::{expand_xi_word, xi_action, xi_action_inverse};
use crate::words::{word_to_auto, FreeAutomorphism, GenKind, GenSymbol, Sign, Word};
use crate::{Error, Result};

/// Which group algebra an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ambient {
    /// The braid-symmetric group of rank m, canonicalized by its faithful
    /// action on the free group of rank m.
    Welded { rank: u32 },
    /// F_n ⋊ P with F_n free of rank n and P basis-conjugating.
    Semidirect { rank: u32 },
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Welded { rank } => write!(f, "welded(rank {rank})"),
            Ambient::Semidirect { rank } => write!(f, "semidirect(rank {rank})"),
        }
    }
}

/// Augmentation choice for [`AlgebraElement::augment`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AugmentMode {
    /// Welded ambient: every group element maps to 1.
    AllToOne,
    /// Semidirect ambient: x_k ↦ t_k, automorphism part ↦ 1.
    FreeToParams,
}

/// A canonical group element of one of the two ambients.
#[derive(Clone, Debug)]
pub enum CanonElement {
    Welded {
        /// Action on the free group of rank m; the canonical key.
        auto: FreeAutomorphism,
        /// A σ/τ word spelling the element (display only).
        witness: Word,
    },
    Semidirect {
        /// Reduced free word over x_1..x_n.
        free: Word,
        /// Left conjugation action of the automorphism part.
        auto: FreeAutomorphism,
        /// Inverse of `auto`, maintained so products never invert.
        auto_inv: FreeAutomorphism,
        /// A ξ/x word spelling the element (display only).
        witness: Word,
    },
}

/// Cancels adjacent inverse pairs and adjacent equal-index τ letters
/// (τ_i is an involution), and normalizes τ letters to positive sign.
fn tidy_welded_witness(w: &Word) -> Word {
    let mut stack: Vec<GenSymbol> = Vec::with_capacity(w.len());
    for &raw in w.letters() {
        let letter = match raw.kind {
            GenKind::Tau(i) => GenSymbol::new(GenKind::Tau(i), Sign::Plus),
            _ => raw,
        };
        let cancels = match (stack.last(), letter.kind) {
            (Some(top), GenKind::Tau(i)) => top.kind == GenKind::Tau(i),
            (Some(&top), _) => top == letter.inverse(),
            (None, _) => false,
        };
        if cancels {
            stack.pop();
        } else {
            stack.push(letter);
        }
    }
    Word::new(w.rank(), stack).expect("letters already validated")
}

impl CanonElement {
    /// The identity of the chosen ambient.
    pub fn identity(ambient: Ambient) -> CanonElement {
        match ambient {
            Ambient::Welded { rank } => CanonElement::Welded {
                auto: FreeAutomorphism::identity(rank),
                witness: Word::identity(rank),
            },
            Ambient::Semidirect { rank } => CanonElement::Semidirect {
                free: Word::identity(rank),
                auto: FreeAutomorphism::identity(rank),
                auto_inv: FreeAutomorphism::identity(rank),
                witness: Word::identity(rank),
            },
        }
    }

    /// Canonicalizes a word into the ambient. Welded ambients accept σ/τ/ξ
    /// letters (ξ letters are expanded into σ/τ words); semidirect ambients
    /// accept ξ and x letters.
    pub fn from_word(ambient: Ambient, w: &Word) -> Result<CanonElement> {
        match ambient {
            Ambient::Welded { rank } => {
                if w.rank() != rank {
                    return Err(Error::RankMismatch(rank, w.rank()));
                }
                let expanded = expand_xi_word(w)?;
                let auto = word_to_auto(&expanded)?;
                let witness = if auto.is_identity() {
                    Word::identity(rank)
                } else {
                    tidy_welded_witness(&expanded)
                };
                Ok(CanonElement::Welded { auto, witness })
            }
            Ambient::Semidirect { rank } => {
                if w.rank() != rank {
                    return Err(Error::RankMismatch(rank, w.rank()));
                }
                let mut acc = CanonElement::identity(ambient);
                for &letter in w.letters() {
                    acc = acc.mul(&CanonElement::semidirect_letter(rank, letter)?)?;
                }
                Ok(acc)
            }
        }
    }

    fn semidirect_letter(rank: u32, letter: GenSymbol) -> Result<CanonElement> {
        let witness = Word::new(rank, vec![letter])?;
        match letter.kind {
            GenKind::Xi(i, j) => {
                // ξ_{i,j} conjugates on the left by itself: x_i ↦ ξ x_i ξ^{-1}
                // = x_j^{-1} x_i x_j, the inverse of its right action.
                let (auto, auto_inv) = match letter.sign {
                    Sign::Plus => (xi_action_inverse(i, j, rank)?, xi_action(i, j, rank)?),
                    Sign::Minus => (xi_action(i, j, rank)?, xi_action_inverse(i, j, rank)?),
                };
                Ok(CanonElement::Semidirect {
                    free: Word::identity(rank),
                    auto,
                    auto_inv,
                    witness,
                })
            }
            GenKind::FreeX(k) => Ok(CanonElement::Semidirect {
                free: Word::free_x(rank, k, letter.sign)?,
                auto: FreeAutomorphism::identity(rank),
                auto_inv: FreeAutomorphism::identity(rank),
                witness,
            }),
            _ => Err(Error::UnsupportedLetter {
                letter: letter.to_string(),
                operation: "semidirect ambient".into(),
            }),
        }
    }

    pub fn ambient(&self) -> Ambient {
        match self {
            CanonElement::Welded { auto, .. } => Ambient::Welded { rank: auto.rank() },
            CanonElement::Semidirect { auto, .. } => Ambient::Semidirect { rank: auto.rank() },
        }
    }

    /// The stored spelling of the element.
    pub fn witness(&self) -> &Word {
        match self {
            CanonElement::Welded { witness, .. } => witness,
            CanonElement::Semidirect { witness, .. } => witness,
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            CanonElement::Welded { auto, .. } => auto.is_identity(),
            CanonElement::Semidirect { free, auto, .. } => {
                free.is_empty() && auto.is_identity()
            }
        }
    }

    /// Free word, left action, and inverse action of a semidirect element.
    pub fn semidirect_parts(&self) -> Option<(&Word, &FreeAutomorphism, &FreeAutomorphism)> {
        match self {
            CanonElement::Semidirect { free, auto, auto_inv, .. } => {
                Some((free, auto, auto_inv))
            }
            CanonElement::Welded { .. } => None,
        }
    }

    /// Exact group multiplication `self · other`.
    pub fn mul(&self, other: &CanonElement) -> Result<CanonElement> {
        match (self, other) {
            (
                CanonElement::Welded { auto: a1, witness: w1 },
                CanonElement::Welded { auto: a2, witness: w2 },
            ) => {
                // Words act on the right, so the action of a product applies
                // the left factor's automorphism first.
                let auto = FreeAutomorphism::compose(a2, a1)?;
                let witness = if auto.is_identity() {
                    Word::identity(a1.rank())
                } else {
                    tidy_welded_witness(&w1.concat(w2)?)
                };
                Ok(CanonElement::Welded { auto, witness })
            }
            (
                CanonElement::Semidirect { free: f1, auto: a1, auto_inv: i1, witness: w1 },
                CanonElement::Semidirect { free: f2, auto: a2, auto_inv: i2, witness: w2 },
            ) => {
                let free = f1.concat(&a1.apply(f2)?)?.reduced();
                let auto = FreeAutomorphism::compose(a1, a2)?;
                let auto_inv = FreeAutomorphism::compose(i2, i1)?;
                let witness = if free.is_empty() && auto.is_identity() {
                    Word::identity(f1.rank())
                } else {
                    w1.concat(w2)?.reduced()
                };
                Ok(CanonElement::Semidirect { free, auto, auto_inv, witness })
            }
            _ => Err(Error::AmbientMismatch(
                self.ambient().to_string(),
                other.ambient().to_string(),
            )),
        }
    }

    /// Group inverse of a semidirect element: (w, g)^{-1} = (g^{-1}(w^{-1}), g^{-1}).
    pub fn semidirect_inverse(&self) -> Result<CanonElement> {
        match self {
            CanonElement::Semidirect { free, auto, auto_inv, witness } => {
                Ok(CanonElement::Semidirect {
                    free: auto_inv.apply(&free.inverse())?,
                    auto: auto_inv.clone(),
                    auto_inv: auto.clone(),
                    witness: witness.inverse(),
                })
            }
            CanonElement::Welded { .. } => Err(Error::UnsupportedLetter {
                letter: "welded element".into(),
                operation: "semidirect inversion".into(),
            }),
        }
    }

    fn key(&self) -> (u8, Option<&Word>, &FreeAutomorphism) {
        match self {
            CanonElement::Welded { auto, .. } => (0, None, auto),
            CanonElement::Semidirect { free, auto, .. } => (1, Some(free), auto),
        }
    }
}

impl PartialEq for CanonElement {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for CanonElement {}

impl PartialOrd for CanonElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl Hash for CanonElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Display for CanonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let witness = self.witness();
        if witness.is_empty() {
            write!(f, "[]")
        } else {
            write!(f, "[{witness}]")
        }
    }
}

/// A finite sum of canonical group elements with Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    ambient: Ambient,
    terms: BTreeMap<CanonElement, LaurentPoly>,
}

impl AlgebraElement {
    pub fn zero(ambient: Ambient) -> AlgebraElement {
        AlgebraElement { ambient, terms: BTreeMap::new() }
    }

    /// The identity group element with coefficient 1.
    pub fn one(ambient: Ambient) -> AlgebraElement {
        AlgebraElement::from_poly(ambient, &LaurentPoly::one())
    }

    /// A scalar multiple of the identity group element.
    pub fn from_poly(ambient: Ambient, p: &LaurentPoly) -> AlgebraElement {
        AlgebraElement::term(CanonElement::identity(ambient), p.clone())
    }

    /// The canonical element of a word, with coefficient 1.
    pub fn group(ambient: Ambient, w: &Word) -> Result<AlgebraElement> {
        Ok(AlgebraElement::term(CanonElement::from_word(ambient, w)?, LaurentPoly::one()))
    }

    /// A word's canonical element scaled by a polynomial.
    pub fn scaled_group(ambient: Ambient, p: &LaurentPoly, w: &Word) -> Result<AlgebraElement> {
        Ok(AlgebraElement::term(CanonElement::from_word(ambient, w)?, p.clone()))
    }

    /// Single-term element `p · g`.
    pub fn term(g: CanonElement, p: LaurentPoly) -> AlgebraElement {
        let ambient = g.ambient();
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(g, p);
        }
        AlgebraElement { ambient, terms }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonElement, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    fn check_ambient(&self, other: &AlgebraElement) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(
                self.ambient.to_string(),
                other.ambient.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_ambient(other)?;
        let mut terms = self.terms.clone();
        for (g, p) in &other.terms {
            let entry = terms.entry(g.clone()).or_insert_with(LaurentPoly::zero);
            *entry = entry.add(p);
            if entry.is_zero() {
                terms.remove(g);
            }
        }
        Ok(AlgebraElement { ambient: self.ambient, terms })
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(g, p)| (g.clone(), p.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.neg())
    }

    /// Bilinear extension of group multiplication.
    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_ambient(other)?;
        let mut terms: BTreeMap<CanonElement, LaurentPoly> = BTreeMap::new();
        for (g1, p1) in &self.terms {
            for (g2, p2) in &other.terms {
                let g = g1.mul(g2)?;
                let p = p1.mul(p2);
                let entry = terms.entry(g).or_insert_with(LaurentPoly::zero);
                *entry = entry.add(&p);
            }
        }
        terms.retain(|_, p| !p.is_zero());
        Ok(AlgebraElement { ambient: self.ambient, terms })
    }

    /// Multiplies every coefficient by a fixed polynomial.
    pub fn scale(&self, p: &LaurentPoly) -> AlgebraElement {
        let mut terms: BTreeMap<CanonElement, LaurentPoly> = BTreeMap::new();
        for (g, q) in &self.terms {
            let scaled = q.mul(p);
            if !scaled.is_zero() {
                terms.insert(g.clone(), scaled);
            }
        }
        AlgebraElement { ambient: self.ambient, terms }
    }

    /// Collapses group elements to scalars. `AllToOne` sends every welded
    /// element to 1; `FreeToParams` sends a semidirect element to the
    /// product of t_k^{±1} over its free letters, ignoring the
    /// automorphism part. Both are ring homomorphisms.
    pub fn augment(&self, mode: AugmentMode) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (g, p) in &self.terms {
            let image = match (mode, g) {
                (AugmentMode::AllToOne, CanonElement::Welded { .. }) => LaurentPoly::one(),
                (AugmentMode::FreeToParams, CanonElement::Semidirect { free, .. }) => {
                    let mut m = LaurentPoly::one();
                    for letter in free.letters() {
                        let k = match letter.kind {
                            GenKind::FreeX(k) => k,
                            _ => unreachable!("free part holds only free letters"),
                        };
                        let e = match letter.sign {
                            Sign::Plus => 1,
                            Sign::Minus => -1,
                        };
                        m = m.mul(&LaurentPoly::var_pow(Param::t(k), e));
                    }
                    m
                }
                _ => {
                    return Err(Error::AmbientMismatch(
                        self.ambient.to_string(),
                        format!("{mode:?} augmentation"),
                    ))
                }
            };
            out = out.add(&p.mul(&image));
        }
        Ok(out)
    }

    /// Substitutes parameters inside every coefficient; group parts are
    /// untouched.
    pub fn substitute(
        &self,
        bindings: &std::collections::BTreeMap<Param, LaurentPoly>,
    ) -> Result<AlgebraElement> {
        let mut terms = BTreeMap::new();
        for (g, p) in &self.terms {
            let q = p.substitute(bindings)?;
            if !q.is_zero() {
                terms.insert(g.clone(), q);
            }
        }
        Ok(AlgebraElement { ambient: self.ambient, terms })
    }

    /// JSON encoding `{"terms": [{"coeff": <poly>, "group": "<word>"}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(g, p)| {
                serde_json::json!({ "coeff": p.to_json(), "group": g.witness().to_string() })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    /// Inverse of [`AlgebraElement::to_json`]; the ambient determines how
    /// group words are canonicalized.
    pub fn from_json(value: &serde_json::Value, ambient: Ambient) -> Result<AlgebraElement> {
        let err = |msg: &str| Error::Parse(format!("algebra JSON: {msg}"));
        let rank = match ambient {
            Ambient::Welded { rank } | Ambient::Semidirect { rank } => rank,
        };
        let terms = value
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| err("missing terms array"))?;
        let mut out = AlgebraElement::zero(ambient);
        for term in terms {
            let coeff = LaurentPoly::from_json(
                term.get("coeff").ok_or_else(|| err("missing coeff"))?,
            )?;
            let word_text = term
                .get("group")
                .and_then(|g| g.as_str())
                .ok_or_else(|| err("missing group word"))?;
            let word = Word::parse(word_text, rank)?;
            out = out.add(&AlgebraElement::scaled_group(ambient, &coeff, &word)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (g, p)) in self.terms.iter().enumerate() {
            let single = p.terms().count() == 1;
            if single {
                let (mono, coeff) = p.terms().next().unwrap();
                if i == 0 {
                    if coeff < 0 {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, "{}", if coeff < 0 { " - " } else { " + " })?;
                }
                let magnitude = LaurentPoly::term(coeff.abs(), mono.clone());
                if g.is_identity() {
                    write!(f, "{magnitude}")?;
                } else if magnitude.is_one() {
                    write!(f, "{g}")?;
                } else {
                    write!(f, "{magnitude}{g}")?;
                }
            } else {
                if i > 0 {
                    write!(f, " + ")?;
                }
                if g.is_identity() {
                    write!(f, "({p})")?;
                } else {
                    write!(f, "({p}){g}")?;
                }
            }
        }
        Ok(())
    }
}

/// Basis label of a representation matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Standard module basis δ_1, …, δ_n.
    Delta,
    /// Augmentation-ideal basis x_1 − 1, …, x_n − 1.
    AugIdeal,
    /// Basis of the level-r iterated construction.
    Iterated(u32),
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Delta => write!(f, "delta"),
            Basis::AugIdeal => write!(f, "aug_ideal"),
            Basis::Iterated(r) => write!(f, "iterated({r})"),
        }
    }
}

impl Basis {
    pub fn parse(text: &str) -> Result<Basis> {
        match text {
            "delta" => Ok(Basis::Delta),
            "aug_ideal" => Ok(Basis::AugIdeal),
            _ => {
                let inner = text
                    .strip_prefix("iterated(")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("unknown basis {text:?}")))?;
                let r = inner
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("unknown basis {text:?}")))?;
                Ok(Basis::Iterated(r))
            }
        }
    }
}

/// Entry requirements for [`Matrix`]: a ring whose identities are obtained
/// from a sample value, so that ambient-tagged rings work uniformly.
pub trait MatrixEntry: Clone + Eq {
    fn zero_of(&self) -> Self;
    fn one_of(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
}

impl MatrixEntry for LaurentPoly {
    fn zero_of(&self) -> Self {
        LaurentPoly::zero()
    }
    fn one_of(&self) -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        Ok(LaurentPoly::add(self, other))
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        Ok(LaurentPoly::mul(self, other))
    }
    fn neg(&self) -> Self {
        LaurentPoly::neg(self)
    }
}

impl MatrixEntry for AlgebraElement {
    fn zero_of(&self) -> Self {
        AlgebraElement::zero(self.ambient())
    }
    fn one_of(&self) -> Self {
        AlgebraElement::one(self.ambient())
    }
    fn is_zero(&self) -> bool {
        AlgebraElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        AlgebraElement::add(self, other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        AlgebraElement::mul(self, other)
    }
    fn neg(&self) -> Self {
        AlgebraElement::neg(self)
    }
}

/// A dense square matrix with a basis tag. Products require matching sizes
/// and bases; equality is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T: MatrixEntry> {
    basis: Basis,
    entries: Vec<Vec<T>>,
}

/// Matrix over a group algebra.
pub type AlgMatrix = Matrix<AlgebraElement>;
/// Matrix over the Laurent ring.
pub type PolyMatrix = Matrix<LaurentPoly>;

impl<T: MatrixEntry> Matrix<T> {
    /// Builds from rows, which must form a square.
    pub fn from_rows(basis: Basis, entries: Vec<Vec<T>>) -> Result<Matrix<T>> {
        let size = entries.len();
        for row in &entries {
            if row.len() != size {
                return Err(Error::SizeMismatch(size, row.len()));
            }
        }
        Ok(Matrix { basis, entries })
    }

    /// Identity matrix; the sample entry supplies the ring identities.
    pub fn identity(size: usize, basis: Basis, like: &T) -> Matrix<T> {
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| if i == j { like.one_of() } else { like.zero_of() })
                    .collect()
            })
            .collect();
        Matrix { basis, entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Entry at 0-based position (i, j).
    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.entries
    }

    fn check_compatible(&self, other: &Matrix<T>) -> Result<()> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(self.basis.to_string(), other.basis.to_string()));
        }
        Ok(())
    }

    /// Exact matrix product.
    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        self.check_compatible(other)?;
        let size = self.size();
        let sample = &self.entries[0][0];
        let mut entries = vec![vec![sample.zero_of(); size]; size];
        for i in 0..size {
            for j in 0..size {
                let mut acc = sample.zero_of();
                for (k, row) in other.entries.iter().enumerate() {
                    acc = acc.add(&self.entries[i][k].mul(&row[j])?)?;
                }
                entries[i][j] = acc;
            }
        }
        Ok(Matrix { basis: self.basis, entries })
    }

    pub fn is_identity(&self) -> bool {
        let sample = &self.entries[0][0];
        *self == Matrix::identity(self.size(), self.basis, sample)
    }

    /// Kronecker product, left factor varying slowest. Two iterated bases
    /// combine by adding levels; otherwise the left basis is kept.
    pub fn kron(&self, other: &Matrix<T>) -> Matrix<T> {
        let (m, n) = (self.size(), other.size());
        let basis = match (self.basis, other.basis) {
            (Basis::Iterated(a), Basis::Iterated(b)) => Basis::Iterated(a + b),
            (basis, _) => basis,
        };
        let entries = (0..m * n)
            .map(|row| {
                (0..m * n)
                    .map(|col| {
                        let a = &self.entries[row / n][col / n];
                        let b = &other.entries[row % n][col % n];
                        a.mul(b).expect("kron factors share no ambient constraints")
                    })
                    .collect()
            })
            .collect();
        Matrix { basis, entries }
    }

    /// Principal submatrix obtained by deleting the 1-based rows and
    /// columns listed in `indices`.
    pub fn delete_rows_cols(&self, indices: &[usize]) -> Result<Matrix<T>> {
        for &i in indices {
            if i < 1 || i > self.size() {
                return Err(Error::IndexOutOfRange(format!(
                    "cannot delete row/column {i} of a {0}×{0} matrix",
                    self.size()
                )));
            }
        }
        let keep: Vec<usize> =
            (1..=self.size()).filter(|i| !indices.contains(i)).collect();
        let entries = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.entries[i - 1][j - 1].clone()).collect())
            .collect();
        Ok(Matrix { basis: self.basis, entries })
    }
}

/// Applies an augmentation to every entry of a symbolic matrix.
pub fn augment_matrix(m: &AlgMatrix, mode: AugmentMode) -> Result<PolyMatrix> {
    let entries = m
        .rows()
        .iter()
        .map(|row| row.iter().map(|e| e.augment(mode)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(m.basis(), entries)
}

impl Matrix<LaurentPoly> {
    /// Exact determinant by cofactor expansion with memoization on column
    /// subsets; sizes stay small (at most 12) in every use here.
    pub fn determinant(&self) -> LaurentPoly {
        assert!(self.size() <= 64, "determinant limited to bitmask-width sizes");
        let full: u64 = if self.size() == 64 { u64::MAX } else { (1u64 << self.size()) - 1 };
        let mut memo: std::collections::HashMap<u64, LaurentPoly> =
            std::collections::HashMap::new();
        self.det_on(full, 0, &mut memo)
    }

    fn det_on(
        &self,
        cols: u64,
        row: usize,
        memo: &mut std::collections::HashMap<u64, LaurentPoly>,
    ) -> LaurentPoly {
        if cols == 0 {
            return LaurentPoly::one();
        }
        if let Some(hit) = memo.get(&cols) {
            return hit.clone();
        }
        let mut acc = LaurentPoly::zero();
        let mut parity = 0;
        for j in 0..self.size() {
            if cols & (1 << j) == 0 {
                continue;
            }
            let entry = &self.entries[row][j];
            if !LaurentPoly::is_zero(entry) {
                let minor = self.det_on(cols & !(1 << j), row + 1, memo);
                let signed = if parity % 2 == 0 { minor } else { minor.neg() };
                acc = acc.add(&entry.mul(&signed));
            }
            parity += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// Entrywise parameter substitution.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<Param, LaurentPoly>,
    ) -> Result<Matrix<LaurentPoly>> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.substitute(bindings)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(self.basis, entries)
    }

    /// Aligned text grid with canonically rendered entries.
    pub fn render_grid(&self) -> String {
        let rendered: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect();
        render_grid(&rendered)
    }

    /// JSON encoding `{size, basis, entries: [[{poly: …}]]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<Vec<serde_json::Value>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| serde_json::json!({ "poly": e.to_json() })).collect())
            .collect();
        serde_json::json!({
            "size": self.size(),
            "basis": self.basis.to_string(),
            "entries": entries,
        })
    }

    /// Inverse of [`Matrix::to_json`] for Laurent matrices.
    pub fn from_json(value: &serde_json::Value) -> Result<Matrix<LaurentPoly>> {
        let (basis, rows) = matrix_json_parts(value)?;
        let err = || Error::Parse("matrix JSON: entry missing poly".into());
        let entries = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| LaurentPoly::from_json(e.get("poly").ok_or_else(err)?))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(basis, entries)
    }
}

impl Matrix<AlgebraElement> {
    /// Entrywise coefficient substitution.
    pub fn substitute(
        &self,
        bindings: &std::collections::BTreeMap<Param, LaurentPoly>,
    ) -> Result<AlgMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.substitute(bindings)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(self.basis, entries)
    }

    /// Aligned text grid with bracketed group words.
    pub fn render_grid(&self) -> String {
        let rendered: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect();
        render_grid(&rendered)
    }

    /// JSON encoding `{size, basis, entries: [[{terms: …}]]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<Vec<serde_json::Value>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.to_json()).collect())
            .collect();
        serde_json::json!({
            "size": self.size(),
            "basis": self.basis.to_string(),
            "entries": entries,
        })
    }

    /// Inverse of the algebra-matrix JSON encoding; the ambient determines
    /// how group words are canonicalized.
    pub fn from_json(value: &serde_json::Value, ambient: Ambient) -> Result<AlgMatrix> {
        let (basis, rows) = matrix_json_parts(value)?;
        let entries = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| AlgebraElement::from_json(e, ambient))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(basis, entries)
    }
}

fn matrix_json_parts(value: &serde_json::Value) -> Result<(Basis, Vec<Vec<serde_json::Value>>)> {
    let err = |msg: &str| Error::Parse(format!("matrix JSON: {msg}"));
    let size = value
        .get("size")
        .and_then(|s| s.as_u64())
        .ok_or_else(|| err("missing size"))? as usize;
    let basis = Basis::parse(
        value.get("basis").and_then(|b| b.as_str()).ok_or_else(|| err("missing basis"))?,
    )?;
    let entries = value
        .get("entries")
        .and_then(|e| e.as_array())
        .ok_or_else(|| err("missing entries"))?;
    if entries.len() != size {
        return Err(Error::SizeMismatch(size, entries.len()));
    }
    let mut rows = Vec::with_capacity(size);
    for row in entries {
        let row = row.as_array().ok_or_else(|| err("row is not an array"))?;
        if row.len() != size {
            return Err(Error::SizeMismatch(size, row.len()));
        }
        rows.push(row.clone());
    }
    Ok((basis, rows))
}

fn render_grid(cells: &[Vec<String>]) -> String {
    let size = cells.len();
    let mut widths = vec![0usize; size];
    for row in cells {
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in cells {
        out.push('[');
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                out.push_str("  ");
            }
            let pad = widths[j] - cell.chars().count();
            for _ in 0..pad {
                out.push(' ');
            }
            out.push_str(cell);
        }
        out.push_str("]\n");
    }
    out
}
