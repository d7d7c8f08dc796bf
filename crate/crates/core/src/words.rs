//! Words in signed group generators, free reduction, and free-group
//! automorphisms, including the conjugation-and-permutation action of
//! braid-like generators on a free group.
//!
//! One word type covers four letter alphabets: braid letters σ_i (`s1`),
//! symmetric letters τ_i (`t1`), basis-conjugating letters ξ_{i,j} (`q1.2`),
//! and free letters x_k (`x1`), where x_k abbreviates ξ_{rank+1,k}. A word
//! carries the ambient rank against which letter indices are validated.
//! Free words have a canonical reduced form; σ/τ/ξ words are stored
//! verbatim, and equality of the group elements they spell is decided
//! through the faithful automorphism image, never by rewriting.
//!
//! The action σ_i ↦ ρ_i, τ_i ↦ ϑ_i sends a word to an automorphism of the
//! free group on x_1, …, x_rank:
//!
//! ```text
//! ρ_i: x_i ↦ x_i x_{i+1} x_i^{-1},  x_{i+1} ↦ x_i
//! ϑ_i: x_i ↦ x_{i+1},               x_{i+1} ↦ x_i
//! ```
//!
//! all other generators fixed. Words act on the right: the automorphism of
//! `u v` applies the automorphism of `u` first, then that of `v`.

use std::fmt;

use crate::{Error, Result};

/// Sign of a generator letter: the letter itself or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Unsigned generator name. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    /// Braid generator σ_i, 1 ≤ i ≤ rank−1.
    Sigma(u32),
    /// Symmetric generator τ_i, 1 ≤ i ≤ rank−1.
    Tau(u32),
    /// Basis-conjugating generator ξ_{i,j}, 1 ≤ i ≠ j ≤ rank.
    Xi(u32, u32),
    /// Free generator x_k = ξ_{rank+1,k}, 1 ≤ k ≤ rank.
    FreeX(u32),
}

/// A signed generator letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenSymbol {
    pub kind: GenKind,
    pub sign: Sign,
}

impl GenSymbol {
    pub fn new(kind: GenKind, sign: Sign) -> GenSymbol {
        GenSymbol { kind, sign }
    }

    /// The same letter with opposite sign.
    pub fn inverse(self) -> GenSymbol {
        GenSymbol { kind: self.kind, sign: self.sign.flip() }
    }

    fn check_rank(self, rank: u32) -> Result<()> {
        let ok = match self.kind {
            GenKind::Sigma(i) | GenKind::Tau(i) => 1 <= i && i + 1 <= rank,
            GenKind::Xi(i, j) => 1 <= i && 1 <= j && i <= rank && j <= rank && i != j,
            GenKind::FreeX(k) => 1 <= k && k <= rank,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!(
                "letter {self} is not valid at rank {rank}"
            )))
        }
    }

    fn parse(token: &str) -> Result<GenSymbol> {
        let err = || Error::Parse(format!("bad generator token {token:?}"));
        let mut chars = token.chars();
        let head = chars.next().ok_or_else(err)?;
        let rest = chars.as_str();
        let index = |digits: &str| digits.parse::<u32>().map_err(|_| err());
        let (kind, sign) = match head {
            's' | 'S' | 't' | 'T' | 'x' | 'X' => {
                let i = index(rest)?;
                let kind = match head.to_ascii_lowercase() {
                    's' => GenKind::Sigma(i),
                    't' => GenKind::Tau(i),
                    _ => GenKind::FreeX(i),
                };
                let sign = if head.is_ascii_lowercase() { Sign::Plus } else { Sign::Minus };
                (kind, sign)
            }
            'q' | 'Q' => {
                let (i, j) = rest.split_once('.').ok_or_else(err)?;
                let kind = GenKind::Xi(index(i)?, index(j)?);
                let sign = if head == 'q' { Sign::Plus } else { Sign::Minus };
                (kind, sign)
            }
            _ => return Err(err()),
        };
        Ok(GenSymbol { kind, sign })
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lower = matches!(self.sign, Sign::Plus);
        match self.kind {
            GenKind::Sigma(i) => write!(f, "{}{i}", if lower { 's' } else { 'S' }),
            GenKind::Tau(i) => write!(f, "{}{i}", if lower { 't' } else { 'T' }),
            GenKind::FreeX(k) => write!(f, "{}{k}", if lower { 'x' } else { 'X' }),
            GenKind::Xi(i, j) => write!(f, "{}{i}.{j}", if lower { 'q' } else { 'Q' }),
        }
    }
}

/// A sequence of signed letters together with the ambient rank. The empty
/// word is the identity. Words over σ/τ/ξ letters are kept exactly as
/// built; only [`Word::reduced`] cancels adjacent inverse pairs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    rank: u32,
    letters: Vec<GenSymbol>,
}

impl Word {
    /// The empty word.
    pub fn identity(rank: u32) -> Word {
        Word { rank, letters: Vec::new() }
    }

    /// Builds a word after validating every letter against the rank.
    pub fn new(rank: u32, letters: Vec<GenSymbol>) -> Result<Word> {
        for letter in &letters {
            letter.check_rank(rank)?;
        }
        Ok(Word { rank, letters })
    }

    /// Single free letter x_k.
    pub fn free_x(rank: u32, k: u32, sign: Sign) -> Result<Word> {
        Word::new(rank, vec![GenSymbol::new(GenKind::FreeX(k), sign)])
    }

    /// Parses the whitespace-separated token grammar (`s1 T2 q1.3 X4`).
    /// The empty string parses to the identity.
    pub fn parse(text: &str, rank: u32) -> Result<Word> {
        let letters = text
            .split_whitespace()
            .map(GenSymbol::parse)
            .collect::<Result<Vec<_>>>()?;
        Word::new(rank, letters)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[GenSymbol] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Formal inverse: letters reversed with signs flipped.
    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    /// Concatenation; ranks must agree.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { rank: self.rank, letters })
    }

    /// Cancels adjacent inverse pairs until none remain. For free words
    /// this is the canonical reduced form; reduction is idempotent.
    pub fn reduced(&self) -> Word {
        let mut stack: Vec<GenSymbol> = Vec::with_capacity(self.letters.len());
        for &letter in &self.letters {
            if stack.last() == Some(&letter.inverse()) {
                stack.pop();
            } else {
                stack.push(letter);
            }
        }
        Word { rank: self.rank, letters: stack }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// A permutation of {1, …, n}, stored by its image sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: u32) -> Permutation {
        Permutation { images: (1..=n).collect() }
    }

    /// The adjacent transposition (i, i+1) in S_n.
    pub fn transposition(n: u32, i: u32) -> Result<Permutation> {
        if i < 1 || i + 1 > n {
            return Err(Error::IndexOutOfRange(format!(
                "transposition ({i}, {}) is not valid in S_{n}",
                i + 1
            )));
        }
        let mut p = Permutation::identity(n);
        p.images.swap(i as usize - 1, i as usize);
        Ok(p)
    }

    pub fn size(&self) -> u32 {
        self.images.len() as u32
    }

    /// Image of the point `i`.
    pub fn image_of(&self, i: u32) -> u32 {
        self.images[i as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k as u32 + 1)
    }

    /// Functional composition `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::RankMismatch(self.size(), other.size()));
        }
        let images = (1..=self.size()).map(|i| self.image_of(other.image_of(i))).collect();
        Ok(Permutation { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// An automorphism of the free group on x_1, …, x_rank, stored by the
/// reduced images of the generators. Because images are kept reduced, the
/// derived equality is exactly equality of automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeAutomorphism {
    rank: u32,
    images: Vec<Word>,
}

impl FreeAutomorphism {
    pub fn identity(rank: u32) -> FreeAutomorphism {
        let images = (1..=rank)
            .map(|k| Word::free_x(rank, k, Sign::Plus).expect("generator index in range"))
            .collect();
        FreeAutomorphism { rank, images }
    }

    /// Builds from explicit generator images (free words of equal rank).
    pub fn from_images(rank: u32, images: Vec<Word>) -> Result<FreeAutomorphism> {
        if images.len() != rank as usize {
            return Err(Error::RankMismatch(rank, images.len() as u32));
        }
        let mut reduced = Vec::with_capacity(images.len());
        for w in images {
            if w.rank() != rank {
                return Err(Error::RankMismatch(rank, w.rank()));
            }
            for letter in w.letters() {
                if !matches!(letter.kind, GenKind::FreeX(_)) {
                    return Err(Error::UnsupportedLetter {
                        letter: letter.to_string(),
                        operation: "free-group automorphism image".into(),
                    });
                }
            }
            reduced.push(w.reduced());
        }
        Ok(FreeAutomorphism { rank, images: reduced })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Reduced image of the generator x_k.
    pub fn image_of(&self, k: u32) -> &Word {
        &self.images[k as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self == &FreeAutomorphism::identity(self.rank)
    }

    /// Applies the automorphism to a free word and reduces the result.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch(self.rank, w.rank()));
        }
        let mut letters = Vec::new();
        for letter in w.letters() {
            let k = match letter.kind {
                GenKind::FreeX(k) => k,
                _ => {
                    return Err(Error::UnsupportedLetter {
                        letter: letter.to_string(),
                        operation: "automorphism application".into(),
                    })
                }
            };
            let image = self.image_of(k);
            match letter.sign {
                Sign::Plus => letters.extend_from_slice(image.letters()),
                Sign::Minus => letters.extend_from_slice(image.inverse().letters()),
            }
        }
        Ok(Word { rank: self.rank, letters }.reduced())
    }

    /// Functional composition: `compose(a, b)` maps x ↦ a(b(x)).
    pub fn compose(outer: &FreeAutomorphism, inner: &FreeAutomorphism) -> Result<FreeAutomorphism> {
        if outer.rank != inner.rank {
            return Err(Error::RankMismatch(outer.rank, inner.rank));
        }
        let images = inner
            .images
            .iter()
            .map(|w| outer.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(FreeAutomorphism { rank: outer.rank, images })
    }
}

/// True iff the automorphisms have equal reduced generator images.
pub fn auto_equal(a: &FreeAutomorphism, b: &FreeAutomorphism) -> Result<bool> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch(a.rank(), b.rank()));
    }
    Ok(a == b)
}

/// The automorphism of a single σ or τ letter: ρ_i, ρ_i^{-1}, or ϑ_i.
pub fn artin_auto(g: GenSymbol, rank: u32) -> Result<FreeAutomorphism> {
    g.check_rank(rank)?;
    let x = |k: u32, sign: Sign| GenSymbol::new(GenKind::FreeX(k), sign);
    let word = |letters: Vec<GenSymbol>| Word::new(rank, letters);
    let mut auto = FreeAutomorphism::identity(rank);
    match (g.kind, g.sign) {
        (GenKind::Sigma(i), Sign::Plus) => {
            // x_i ↦ x_i x_{i+1} x_i^{-1}, x_{i+1} ↦ x_i.
            auto.images[i as usize - 1] =
                word(vec![x(i, Sign::Plus), x(i + 1, Sign::Plus), x(i, Sign::Minus)])?;
            auto.images[i as usize] = word(vec![x(i, Sign::Plus)])?;
        }
        (GenKind::Sigma(i), Sign::Minus) => {
            // x_i ↦ x_{i+1}, x_{i+1} ↦ x_{i+1}^{-1} x_i x_{i+1}.
            auto.images[i as usize - 1] = word(vec![x(i + 1, Sign::Plus)])?;
            auto.images[i as usize] =
                word(vec![x(i + 1, Sign::Minus), x(i, Sign::Plus), x(i + 1, Sign::Plus)])?;
        }
        (GenKind::Tau(i), _) => {
            auto.images[i as usize - 1] = word(vec![x(i + 1, Sign::Plus)])?;
            auto.images[i as usize] = word(vec![x(i, Sign::Plus)])?;
        }
        _ => {
            return Err(Error::UnsupportedLetter {
                letter: g.to_string(),
                operation: "conjugation-permutation action".into(),
            })
        }
    }
    Ok(auto)
}

/// The automorphism of a σ/τ word, letters acting in word order: the
/// automorphism of `u v` applies that of `u` first, then that of `v`.
pub fn word_to_auto(w: &Word) -> Result<FreeAutomorphism> {
    let mut acc = FreeAutomorphism::identity(w.rank());
    for &letter in w.letters() {
        let step = artin_auto(letter, w.rank())?;
        acc = FreeAutomorphism::compose(&step, &acc)?;
    }
    Ok(acc)
}
