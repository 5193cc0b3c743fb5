//! Bracket arithmetic for rooted graphs at `x = -1`.
//!
//! A rooted graph `G_v` has bracket `<a - b, a, b>` where `a = I(G - v; -1)`
//! and `b = I(G - N[v]; -1)`. Pasting and extension act on brackets by pure
//! integer maps, so constructions can be planned without building graphs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer triple `<value, a, b>` with `value = a - b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 3]", into = "[i64; 3]")]
pub struct Bracket {
    value: i64,
    a: i64,
    b: i64,
}

impl Bracket {
    pub const fn new(a: i64, b: i64) -> Self {
        Bracket { value: a - b, a, b }
    }

    /// Checks `value == a - b`.
    pub fn from_triple(value: i64, a: i64, b: i64) -> Result<Self> {
        if a.checked_sub(b) != Some(value) {
            return Err(Error::InvalidArgument(format!(
                "bracket <{value}, {a}, {b}> violates value = a - b"
            )));
        }
        Ok(Bracket { value, a, b })
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn triple(&self) -> [i64; 3] {
        [self.value, self.a, self.b]
    }

    /// Bracket of `G_v ^ H_w` from the brackets of the two parts. Valid for
    /// rooted graphs on at least two vertices each.
    pub fn paste(&self, other: &Bracket) -> Bracket {
        Bracket::new(self.a * other.a, self.b * other.b)
    }

    /// One step of extension: `<a - b, a, b>` becomes `<-b, a - b, a>`.
    pub fn extend_once(&self) -> Bracket {
        Bracket::new(self.value, self.a)
    }

    /// Bracket after attaching a path with `length` edges at the root.
    /// The map has period 6, so only `length % 6` steps are applied.
    pub fn extend(&self, length: usize) -> Bracket {
        (0..length % 6).fold(*self, |b, _| b.extend_once())
    }

    pub fn negate(&self) -> Bracket {
        Bracket::new(-self.a, -self.b)
    }
}

impl TryFrom<[i64; 3]> for Bracket {
    type Error = Error;

    fn try_from([value, a, b]: [i64; 3]) -> Result<Self> {
        Bracket::from_triple(value, a, b)
    }
}

impl From<Bracket> for [i64; 3] {
    fn from(b: Bracket) -> Self {
        b.triple()
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}, {}>", self.value, self.a, self.b)
    }
}

/// `<ac - bd, ac, bd>` for `<a - b, a, b>` and `<c - d, c, d>`.
pub fn paste_brackets(left: &Bracket, right: &Bracket) -> Bracket {
    left.paste(right)
}

pub fn extend_bracket(bracket: &Bracket, length: usize) -> Bracket {
    bracket.extend(length)
}

pub fn negate_bracket(bracket: &Bracket) -> Bracket {
    bracket.negate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const C6: Bracket = Bracket::new(1, -1);
    const C6_1: Bracket = Bracket::new(2, 1);
    const K2: Bracket = Bracket::new(0, 1);

    #[test]
    fn paste_examples() {
        assert_eq!(C6_1.paste(&C6_1).triple(), [3, 4, 1]);
        assert_eq!(C6.paste(&C6_1).triple(), [3, 2, -1]);
        let b = Bracket::new(7, -4);
        assert_eq!(b.paste(&K2).triple(), [4, 0, -4]);
    }

    #[test]
    fn extension_examples() {
        assert_eq!(C6.extend(1).triple(), [1, 2, 1]);
        assert_eq!(C6.extend(6), C6);
        assert_eq!(C6.extend(0), C6);
        assert_eq!(C6.negate().triple(), [-2, -1, 1]);
        assert_eq!(Bracket::new(0, 0).negate(), Bracket::new(0, 0));
    }

    #[test]
    fn triple_validation() {
        assert!(Bracket::from_triple(2, 1, -1).is_ok());
        assert!(Bracket::from_triple(2, 1, 1).is_err());
        let json = serde_json::to_string(&C6).unwrap();
        assert_eq!(json, "[2,1,-1]");
        assert!(serde_json::from_str::<Bracket>("[3,1,-1]").is_err());
    }

    /// Unrolled single-step map, applied `length` times with no period shortcut.
    fn extend_naive(b: Bracket, length: usize) -> Bracket {
        let (mut a, mut bb) = (b.a(), b.b());
        for _ in 0..length {
            (a, bb) = (a - bb, a);
        }
        Bracket::new(a, bb)
    }

    proptest! {
        #[test]
        fn three_steps_negate(a in -1000i64..1000, b in -1000i64..1000) {
            let br = Bracket::new(a, b);
            prop_assert_eq!(br.extend(3).triple(), [b - a, -a, -b]);
            prop_assert_eq!(br.extend(3), br.negate());
            prop_assert_eq!(br.negate().negate(), br);
        }

        #[test]
        fn period_six(a in -1000i64..1000, b in -1000i64..1000, l in 0usize..40) {
            let br = Bracket::new(a, b);
            prop_assert_eq!(br.extend(6), br);
            prop_assert_eq!(br.extend(l), extend_naive(br, l));
        }

        #[test]
        fn paste_value_is_ac_minus_bd(a in -100i64..100, b in -100i64..100, c in -100i64..100, d in -100i64..100) {
            let p = Bracket::new(a, b).paste(&Bracket::new(c, d));
            prop_assert_eq!(p.value(), a * c - b * d);
            prop_assert_eq!(p.value(), p.a() - p.b());
        }
    }
}
