//! Reduced words in the rank-2g free group over the symplectic letter alphabet.
//!
//! The alphabet for genus g has 4g letters, indexed 1..=4g. Block k
//! (k = 0..g-1) covers indices 4k+1..4k+4 and spells the inverse commutator
//! of the pair (alpha_{g-k}, beta_{g-k}):
//!
//!   4k+1 = b_{g-k},  4k+2 = a_{g-k},  4k+3 = b_{g-k}^-1,  4k+4 = a_{g-k}^-1
//!
//! so the concatenation 1, 2, ..., 4g is the inverse of the boundary word.
//! Tokens are `a1`/`b1`... with capitalised forms for inverses.

use std::cmp::Ordering;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Which symplectic family a letter belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Alpha,
    Beta,
}

/// Fixed genus together with the derived alphabet and boundary word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenusContext {
    g: usize,
}

impl GenusContext {
    pub fn new(g: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidGenus(g));
        }
        Ok(GenusContext { g })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    /// Number of letters, 4g.
    pub fn alphabet_size(&self) -> usize {
        4 * self.g
    }

    /// Rank of the surface group, 2g.
    pub fn rank(&self) -> usize {
        2 * self.g
    }

    /// The boundary word: the product of commutators [a_1,b_1]...[a_g,b_g].
    pub fn boundary(&self) -> Word {
        let mut letters = Vec::with_capacity(4 * self.g);
        for k in (0..self.g).rev() {
            let base = (4 * k) as u16;
            // [a_j, b_j] = a_j b_j a_j^-1 b_j^-1 with j = g - k
            letters.extend_from_slice(&[base + 2, base + 1, base + 4, base + 3]);
        }
        // Commutator products are reduced as written.
        Word(letters)
    }

    /// The inverse boundary word, which is the letter sequence 1, 2, ..., 4g.
    pub fn boundary_inverse(&self) -> Word {
        Word((1..=4 * self.g as u16).collect())
    }

    pub fn contains(&self, letter: Letter) -> bool {
        (1..=4 * self.g as u16).contains(&letter.0)
    }
}

/// A single letter, stored as its index in 1..=4g.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    pub fn from_index(index: usize, ctx: &GenusContext) -> Result<Letter> {
        if index == 0 || index > ctx.alphabet_size() {
            return Err(Error::UnknownLetter {
                token: index.to_string(),
                genus: ctx.genus(),
            });
        }
        Ok(Letter(index as u16))
    }

    pub fn index(&self) -> usize {
        self.0 as usize
    }

    /// Inverse letter: within each block of four, 1 <-> 3 and 2 <-> 4.
    pub fn inverse(&self) -> Letter {
        Letter(invert_index(self.0))
    }

    pub fn family(&self) -> Family {
        match (self.0 - 1) % 4 {
            0 | 2 => Family::Beta,
            _ => Family::Alpha,
        }
    }

    /// Subscript of the underlying generator, in 1..=g.
    pub fn subscript(&self, ctx: &GenusContext) -> usize {
        ctx.genus() - (self.0 as usize - 1) / 4
    }

    pub fn is_inverse(&self) -> bool {
        matches!((self.0 - 1) % 4, 2 | 3)
    }

    pub fn token(&self, ctx: &GenusContext) -> String {
        let name = match (self.family(), self.is_inverse()) {
            (Family::Alpha, false) => "a",
            (Family::Beta, false) => "b",
            (Family::Alpha, true) => "A",
            (Family::Beta, true) => "B",
        };
        format!("{}{}", name, self.subscript(ctx))
    }

    pub fn from_token(token: &str, ctx: &GenusContext) -> Result<Letter> {
        let err = || Error::UnknownLetter {
            token: token.to_string(),
            genus: ctx.genus(),
        };
        let mut chars = token.chars();
        let head = chars.next().ok_or_else(err)?;
        let subscript: usize = chars.as_str().parse().map_err(|_| err())?;
        if subscript == 0 || subscript > ctx.genus() {
            return Err(err());
        }
        let base = (4 * (ctx.genus() - subscript)) as u16;
        let offset = match head {
            'b' => 1,
            'a' => 2,
            'B' => 3,
            'A' => 4,
            _ => return Err(err()),
        };
        Ok(Letter(base + offset))
    }
}

fn invert_index(index: u16) -> u16 {
    match (index - 1) % 4 {
        0 | 1 => index + 2,
        _ => index - 2,
    }
}

/// A freely reduced word. The empty word is the group identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u16>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out: Vec<u16> = Vec::new();
        for letter in letters {
            push_reduced(&mut out, letter.0);
        }
        Word(out)
    }

    /// Parse whitespace-separated tokens; the empty string is the identity.
    pub fn parse(text: &str, ctx: &GenusContext) -> Result<Word> {
        let mut out = Vec::new();
        for token in text.split_whitespace() {
            out.push(Letter::from_token(token, ctx)?);
        }
        Ok(Word::from_letters(out))
    }

    pub fn to_text(&self, ctx: &GenusContext) -> String {
        self.letters()
            .map(|l| l.token(ctx))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().map(|&i| Letter(i))
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().map(|&i| Letter(i))
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().map(|&i| Letter(i))
    }

    pub fn letter_at(&self, j: usize) -> Letter {
        Letter(self.0[j])
    }

    /// Reduced product. Cancellation happens only at the junction.
    pub fn multiply(&self, other: &Word) -> Word {
        let k = self.cancellation_with(other);
        let mut out = Vec::with_capacity(self.len() + other.len() - 2 * k);
        out.extend_from_slice(&self.0[..self.len() - k]);
        out.extend_from_slice(&other.0[k..]);
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&i| invert_index(i)).collect())
    }

    /// Depth of cancellation in the product `self * other`: the largest k such
    /// that the length-k suffix of `self` is inverse to the length-k prefix of
    /// `other`.
    pub fn cancellation_with(&self, other: &Word) -> usize {
        let max = self.len().min(other.len());
        let mut k = 0;
        while k < max && self.0[self.len() - 1 - k] == invert_index(other.0[k]) {
            k += 1;
        }
        k
    }

    /// First `k` letters as a word (reduced because `self` is).
    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    /// Last `k` letters as a word.
    pub fn suffix(&self, k: usize) -> Word {
        Word(self.0[self.len() - k..].to_vec())
    }

    /// Exact positional energy: sum over letters of (4g+1)^(|w|-j) * index.
    pub fn energy(&self, ctx: &GenusContext) -> BigUint {
        let base = BigUint::from(ctx.alphabet_size() + 1);
        let mut acc = BigUint::from(0u32);
        for &i in &self.0 {
            acc = acc * &base + BigUint::from(i);
        }
        acc
    }

    /// Energy ordering without big integers: length first, then the letter
    /// index sequences lexicographically. Agrees with comparing `energy`
    /// because every digit is at most 4g < 4g+1.
    pub fn energy_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Exponent sums over (a_1..a_g, b_1..b_g).
    pub fn abelianize(&self, ctx: &GenusContext) -> Vec<i64> {
        let g = ctx.genus();
        let mut v = vec![0i64; 2 * g];
        for letter in self.letters() {
            let j = letter.subscript(ctx);
            let slot = match letter.family() {
                Family::Alpha => j - 1,
                Family::Beta => g + j - 1,
            };
            v[slot] += if letter.is_inverse() { -1 } else { 1 };
        }
        v
    }

    /// Orientation-free representative: the energy-smaller of `self` and its
    /// inverse. Useful for comparing arcs regardless of direction.
    pub fn undirected(&self) -> Word {
        let inv = self.inverse();
        if self.energy_cmp(&inv) == Ordering::Greater {
            inv
        } else {
            self.clone()
        }
    }
}

fn push_reduced(out: &mut Vec<u16>, letter: u16) {
    if out.last() == Some(&invert_index(letter)) {
        out.pop();
    } else {
        out.push(letter);
    }
}

/// Convenience for tests and the CLI: parse or panic.
pub fn word(text: &str, ctx: &GenusContext) -> Word {
    Word::parse(text, ctx).expect("valid word text")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> GenusContext {
        GenusContext::new(1).unwrap()
    }

    fn g2() -> GenusContext {
        GenusContext::new(2).unwrap()
    }

    #[test]
    fn letter_correspondence_is_fixed() {
        let ctx = g2();
        // sigma_1 = b2, sigma_2 = a2, sigma_3 = B2, sigma_4 = A2, sigma_5 = b1, ...
        let tokens: Vec<String> = (1..=8)
            .map(|i| Letter::from_index(i, &ctx).unwrap().token(&ctx))
            .collect();
        assert_eq!(tokens, ["b2", "a2", "B2", "A2", "b1", "a1", "B1", "A1"]);
    }

    #[test]
    fn letter_inverse_is_an_involution() {
        let ctx = g2();
        for i in 1..=8 {
            let l = Letter::from_index(i, &ctx).unwrap();
            assert_eq!(l.inverse().inverse(), l);
        }
        assert_eq!(Letter(1).inverse(), Letter(3));
        assert_eq!(Letter(2).inverse(), Letter(4));
        assert_eq!(Letter(5).inverse(), Letter(7));
    }

    #[test]
    fn reduce_cancels_adjacent_inverses() {
        let ctx = g1();
        assert_eq!(word("a1 A1", &ctx), Word::identity());
        assert_eq!(word("b1 a1 A1 B1 a1", &ctx), word("a1", &ctx));
    }

    #[test]
    fn boundary_inverse_is_already_reduced() {
        let ctx = g2();
        let w = word("b2 a2 B2 A2 b1 a1 B1 A1", &ctx);
        assert_eq!(w.len(), 8);
        assert_eq!(w, ctx.boundary_inverse());
        // no adjacent inverse pair
        for j in 0..w.len() - 1 {
            assert_ne!(w.letter_at(j + 1), w.letter_at(j).inverse());
        }
    }

    #[test]
    fn boundary_times_inverse_is_identity() {
        for g in 1..=4 {
            let ctx = GenusContext::new(g).unwrap();
            assert_eq!(
                ctx.boundary().multiply(&ctx.boundary_inverse()),
                Word::identity()
            );
            assert_eq!(ctx.boundary().len(), 4 * g);
        }
    }

    #[test]
    fn multiply_examples() {
        let ctx = g1();
        assert_eq!(
            word("b1 a1", &ctx).multiply(&word("A1 B1", &ctx)),
            Word::identity()
        );
        assert_eq!(word("a1", &ctx).multiply(&word("A1 B1", &ctx)), word("B1", &ctx));
        assert_eq!(word("b1", &ctx).multiply(&word("a1", &ctx)), word("b1 a1", &ctx));
    }

    #[test]
    fn invert_examples() {
        let ctx = g1();
        assert_eq!(Word::identity().inverse(), Word::identity());
        assert_eq!(word("b1 a1", &ctx).inverse(), word("A1 B1", &ctx));
        let w = word("a1 B1", &ctx);
        assert_eq!(w.inverse().inverse(), w);
        assert_eq!(w.multiply(&w.inverse()), Word::identity());
    }

    #[test]
    fn energy_of_single_letters() {
        let ctx = g1();
        assert_eq!(word("b1", &ctx).energy(&ctx), BigUint::from(1u32));
        assert_eq!(word("a1", &ctx).energy(&ctx), BigUint::from(2u32));
        assert_eq!(word("B1", &ctx).energy(&ctx), BigUint::from(3u32));
        assert_eq!(word("A1", &ctx).energy(&ctx), BigUint::from(4u32));
    }

    #[test]
    fn energy_weights_leading_letters_highest() {
        let ctx = g1();
        assert_eq!(word("b1 a1", &ctx).energy(&ctx), BigUint::from(7u32));
        assert_eq!(word("a1 b1", &ctx).energy(&ctx), BigUint::from(11u32));
    }

    #[test]
    fn energy_compare_examples() {
        let ctx = g1();
        let ba = word("b1 a1", &ctx);
        assert_eq!(word("b1", &ctx).energy_cmp(&ba), Ordering::Less);
        assert_eq!(ba.energy_cmp(&word("a1 b1", &ctx)), Ordering::Less);
        assert_eq!(ba.energy_cmp(&ba), Ordering::Equal);
    }

    #[test]
    fn abelianize_examples() {
        let ctx = g1();
        assert_eq!(word("b1 a1", &ctx).abelianize(&ctx), vec![1, 1]);
        assert_eq!(Word::identity().abelianize(&ctx), vec![0, 0]);
        assert_eq!(ctx.boundary().abelianize(&ctx), vec![0, 0]);
    }

    #[test]
    fn parse_rejects_unknown_tokens() {
        let ctx = g1();
        assert!(Word::parse("c1", &ctx).is_err());
        assert!(Word::parse("a2", &ctx).is_err());
        assert!(Word::parse("a0", &ctx).is_err());
        assert!(Word::parse("a", &ctx).is_err());
    }

    #[test]
    fn text_round_trip() {
        let ctx = g2();
        for text in ["", "a1", "b2 a2 B2 A2", "a1 a1 b2"] {
            let w = word(text, &ctx);
            assert_eq!(word(&w.to_text(&ctx), &ctx), w);
        }
    }

    #[test]
    fn cancellation_depth() {
        let ctx = g1();
        let u = word("b1 a1", &ctx);
        let v = word("A1 b1", &ctx);
        assert_eq!(u.cancellation_with(&v), 1);
        assert_eq!(u.cancellation_with(&u.inverse()), 2);
        assert_eq!(u.cancellation_with(&u), 0);
    }
}
