//! Codes, ratings and the two Chvátal metrics.
//!
//! A [`Code`] is an ordered sequence of `n` color indices drawn from `[0, c)`.
//! Two codes are compared with:
//!
//! - [`alpha`]: the number of positions where the codes agree (black pegs);
//! - [`beta`]: the best positional agreement over all reorderings of the
//!   second code, which equals the per-color sum of the smaller multiplicity.
//!
//! `n - alpha` is a distance on ordered codes and `n - beta` is a distance on
//! codes taken up to reordering (see [`Code::canonical`]).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Color = u32;

/// Which scoring rule the codemaker uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Standard Mastermind: black and white pegs.
    Full,
    /// Single-count Mastermind with black pegs only.
    Black,
    /// Single-count Mastermind with white pegs only; codes matter up to reordering.
    White,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Full, Variant::Black, Variant::White];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Full => "full",
            Variant::Black => "black",
            Variant::White => "white",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Variant::Full),
            "black" => Ok(Variant::Black),
            "white" => Ok(Variant::White),
            other => Err(Error::InvalidInstance(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code {
    pegs: Vec<Color>,
    colors: u32,
}

impl Code {
    pub fn new(pegs: Vec<Color>, colors: u32) -> Result<Self> {
        if let Some((index, &color)) = pegs.iter().enumerate().find(|(_, &p)| p >= colors) {
            return Err(Error::ColorOutOfRange {
                index,
                color,
                colors,
            });
        }
        Ok(Code { pegs, colors })
    }

    /// The all-`color` code of length `len`.
    pub fn monochrome(color: Color, len: usize, colors: u32) -> Result<Self> {
        Code::new(vec![color; len], colors)
    }

    pub(crate) fn from_parts_unchecked(pegs: Vec<Color>, colors: u32) -> Self {
        debug_assert!(pegs.iter().all(|&p| p < colors));
        Code { pegs, colors }
    }

    pub fn pegs(&self) -> &[Color] {
        &self.pegs
    }

    pub fn len(&self) -> usize {
        self.pegs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pegs.is_empty()
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    /// Representative of the reordering class: pegs sorted non-decreasingly.
    pub fn canonical(&self) -> Code {
        let mut pegs = self.pegs.clone();
        pegs.sort_unstable();
        Code {
            pegs,
            colors: self.colors,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.pegs.windows(2).all(|w| w[0] <= w[1])
    }

    /// Multiplicity of every color, indexed by color.
    pub fn census(&self) -> Vec<usize> {
        let mut counts = vec![0; self.colors as usize];
        for &p in &self.pegs {
            counts[p as usize] += 1;
        }
        counts
    }

    pub fn into_pegs(self) -> Vec<Color> {
        self.pegs
    }

    pub(crate) fn check_compatible(&self, other: &Code) -> Result<()> {
        if self.len() != other.len() || self.colors != other.colors {
            return Err(Error::Dimension {
                expected_len: self.len(),
                expected_colors: self.colors,
                len: other.len(),
                colors: other.colors,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Code {
    /// Comma-separated color indices, the command-line form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pegs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Parses `"0,1,2,3"` into raw pegs. The color bound is applied by [`Code::new`].
pub fn parse_pegs(text: &str) -> Result<Vec<Color>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<Color>()
                .map_err(|e| Error::InvalidInstance(format!("bad peg {s:?}: {e}")))
        })
        .collect()
}

/// The codemaker's answer to a guess.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rating {
    Full { black: u32, white: u32 },
    Black(u32),
    White(u32),
}

impl Rating {
    pub fn variant(&self) -> Variant {
        match self {
            Rating::Full { .. } => Variant::Full,
            Rating::Black(_) => Variant::Black,
            Rating::White(_) => Variant::White,
        }
    }

    /// The rating a guess gets when it is correct: `(n, 0)`, `n` or `n`.
    pub fn maximal(variant: Variant, n: usize) -> Rating {
        let n = n as u32;
        match variant {
            Variant::Full => Rating::Full { black: n, white: 0 },
            Variant::Black => Rating::Black(n),
            Variant::White => Rating::White(n),
        }
    }

    pub fn is_within_bounds(&self, n: usize) -> bool {
        let n = n as u64;
        match *self {
            Rating::Full { black, white } => black as u64 + white as u64 <= n,
            Rating::Black(v) | Rating::White(v) => v as u64 <= n,
        }
    }

    /// Dense index in `[0, (n+1)^2)` for full ratings, `[0, n+1)` otherwise.
    pub(crate) fn slot(&self, n: usize) -> usize {
        match *self {
            Rating::Full { black, white } => black as usize * (n + 1) + white as usize,
            Rating::Black(v) | Rating::White(v) => v as usize,
        }
    }

    pub(crate) fn from_slot(slot: usize, variant: Variant, n: usize) -> Rating {
        match variant {
            Variant::Full => Rating::Full {
                black: (slot / (n + 1)) as u32,
                white: (slot % (n + 1)) as u32,
            },
            Variant::Black => Rating::Black(slot as u32),
            Variant::White => Rating::White(slot as u32),
        }
    }

    pub(crate) fn slot_count(variant: Variant, n: usize) -> usize {
        match variant {
            Variant::Full => (n + 1) * (n + 1),
            Variant::Black | Variant::White => n + 1,
        }
    }

    /// Parses `"1,3"` / `"black=1 white=3"` for full ratings or a bare integer otherwise.
    pub fn parse(text: &str, variant: Variant) -> Result<Rating> {
        let bad = || Error::InvalidInstance(format!("bad {variant} rating {text:?}"));
        let numbers: Vec<u32> = text
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                let s = s
                    .strip_prefix("black=")
                    .or_else(|| s.strip_prefix("white="))
                    .unwrap_or(s);
                s.parse::<u32>()
            })
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        match (variant, numbers.as_slice()) {
            (Variant::Full, [black, white]) => Ok(Rating::Full {
                black: *black,
                white: *white,
            }),
            (Variant::Black, [v]) => Ok(Rating::Black(*v)),
            (Variant::White, [v]) => Ok(Rating::White(*v)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Rating {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rating::Full { black, white } => write!(f, "black={black} white={white}"),
            Rating::Black(v) | Rating::White(v) => write!(f, "{v}"),
        }
    }
}

/// Wire form of a rating: `{black, white}` for full, a bare integer otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatingDoc {
    Pair { black: u32, white: u32 },
    Scalar(u32),
}

impl From<Rating> for RatingDoc {
    fn from(r: Rating) -> Self {
        match r {
            Rating::Full { black, white } => RatingDoc::Pair { black, white },
            Rating::Black(v) | Rating::White(v) => RatingDoc::Scalar(v),
        }
    }
}

impl RatingDoc {
    pub fn into_rating(self, variant: Variant) -> Result<Rating> {
        match (self, variant) {
            (RatingDoc::Pair { black, white }, Variant::Full) => Ok(Rating::Full { black, white }),
            (RatingDoc::Scalar(v), Variant::Black) => Ok(Rating::Black(v)),
            (RatingDoc::Scalar(v), Variant::White) => Ok(Rating::White(v)),
            (doc, _) => Err(Error::VariantMismatch {
                expected: variant,
                rating: format!("{doc:?}"),
            }),
        }
    }
}

/// A guess paired with the rating it received.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Query {
    pub guess: Code,
    pub rating: Rating,
}

impl Query {
    pub fn new(guess: Code, rating: Rating) -> Self {
        Query { guess, rating }
    }
}

/// Number of positions where `x` and `y` agree.
pub fn alpha(x: &Code, y: &Code) -> Result<usize> {
    x.check_compatible(y)?;
    Ok(alpha_unchecked(&x.pegs, &y.pegs))
}

/// Sum over colors of the smaller multiplicity in `x` and `y`.
pub fn beta(x: &Code, y: &Code) -> Result<usize> {
    x.check_compatible(y)?;
    Ok(beta_unchecked(&x.pegs, &y.pegs, x.colors))
}

pub fn rate(secret: &Code, guess: &Code, variant: Variant) -> Result<Rating> {
    secret.check_compatible(guess)?;
    Ok(rate_unchecked(secret, guess, variant))
}

#[inline]
pub(crate) fn alpha_unchecked(x: &[Color], y: &[Color]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a == b).count()
}

pub(crate) fn beta_unchecked(x: &[Color], y: &[Color], colors: u32) -> usize {
    // Small palettes fit on the stack; reductions can produce thousands of colors.
    const STACK: usize = 64;
    if (colors as usize) <= STACK {
        let mut diff = [0i32; STACK];
        beta_with(&mut diff, x, y)
    } else {
        let mut diff = vec![0i32; colors as usize];
        beta_with(&mut diff, x, y)
    }
}

#[inline]
fn beta_with(counts: &mut [i32], x: &[Color], y: &[Color]) -> usize {
    // counts[t] > 0 tracks unmatched occurrences of t in x; each y peg that
    // finds one is a common occurrence.
    for &p in x {
        counts[p as usize] += 1;
    }
    let mut common = 0;
    for &p in y {
        let slot = &mut counts[p as usize];
        if *slot > 0 {
            common += 1;
        }
        *slot -= 1;
    }
    common
}

pub(crate) fn rate_unchecked(secret: &Code, guess: &Code, variant: Variant) -> Rating {
    match variant {
        Variant::Full => {
            let a = alpha_unchecked(&secret.pegs, &guess.pegs);
            let b = beta_unchecked(&secret.pegs, &guess.pegs, secret.colors);
            Rating::Full {
                black: a as u32,
                white: (b - a) as u32,
            }
        }
        Variant::Black => Rating::Black(alpha_unchecked(&secret.pegs, &guess.pegs) as u32),
        Variant::White => {
            Rating::White(beta_unchecked(&secret.pegs, &guess.pegs, secret.colors) as u32)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(pegs: &[u32], colors: u32) -> Code {
        Code::new(pegs.to_vec(), colors).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let s = code(&[0, 1, 2, 3], 6);
        assert_eq!(alpha(&s, &code(&[4, 4, 1, 1], 6)).unwrap(), 0);
        assert_eq!(alpha(&s, &code(&[1, 2, 0, 3], 6)).unwrap(), 1);
        assert_eq!(alpha(&s, &s).unwrap(), 4);
    }

    #[test]
    fn beta_examples() {
        let s = code(&[0, 1, 2, 3], 6);
        assert_eq!(beta(&s, &code(&[4, 4, 1, 1], 6)).unwrap(), 1);
        assert_eq!(beta(&s, &code(&[1, 2, 0, 3], 6)).unwrap(), 4);
        let fives = code(&[5, 5, 5], 6);
        assert_eq!(beta(&fives, &fives).unwrap(), 3);
    }

    #[test]
    fn rate_examples() {
        let s = code(&[0, 1, 2, 3], 6);
        assert_eq!(
            rate(&s, &code(&[3, 2, 2, 4], 6), Variant::Full).unwrap(),
            Rating::Full { black: 1, white: 1 }
        );
        assert_eq!(
            rate(&s, &code(&[5, 5, 3, 4], 6), Variant::Full).unwrap(),
            Rating::Full { black: 0, white: 1 }
        );
        assert_eq!(
            rate(&s, &s, Variant::Full).unwrap(),
            Rating::Full { black: 4, white: 0 }
        );
        assert_eq!(rate(&s, &s, Variant::Black).unwrap(), Rating::Black(4));
        assert_eq!(rate(&s, &s, Variant::White).unwrap(), Rating::White(4));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = code(&[0, 1], 3);
        assert!(matches!(
            alpha(&a, &code(&[0, 1, 2], 3)),
            Err(Error::Dimension { .. })
        ));
        assert!(matches!(
            beta(&a, &code(&[0, 1], 4)),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn color_out_of_range_is_rejected() {
        assert_eq!(
            Code::new(vec![0, 3], 3),
            Err(Error::ColorOutOfRange {
                index: 1,
                color: 3,
                colors: 3
            })
        );
    }

    #[test]
    fn wide_palette_beta() {
        let x = code(&[100, 7, 100], 200);
        let y = code(&[100, 100, 3], 200);
        assert_eq!(beta(&x, &y).unwrap(), 2);
    }

    #[test]
    fn rating_parse_and_display() {
        let r = Rating::parse("black=1 white=3", Variant::Full).unwrap();
        assert_eq!(r, Rating::Full { black: 1, white: 3 });
        assert_eq!(r.to_string(), "black=1 white=3");
        assert_eq!(Rating::parse("1,3", Variant::Full).unwrap(), r);
        assert_eq!(
            Rating::parse("2", Variant::White).unwrap(),
            Rating::White(2)
        );
        assert!(Rating::parse("2", Variant::Full).is_err());
    }

    #[test]
    fn rating_doc_respects_variant() {
        let doc: RatingDoc = serde_json::from_str(r#"{"black":1,"white":2}"#).unwrap();
        assert!(doc.into_rating(Variant::Full).is_ok());
        assert!(doc.into_rating(Variant::Black).is_err());
        let doc: RatingDoc = serde_json::from_str("3").unwrap();
        assert_eq!(doc.into_rating(Variant::Black).unwrap(), Rating::Black(3));
    }
}
