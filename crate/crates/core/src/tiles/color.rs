use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A structured edge label.
///
/// Every compiler in this crate builds its labels from these variants rather
/// than from ad-hoc strings, so two constructions can only produce the same
/// colour when they mean the same thing. Equality is structural, and the
/// canonical text form (see [`Color::canonical`]) is injective.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    /// Free-form text such as `B`, `H`, `0'` or `(1,q0)`.
    Atom(String),
    /// A finite sequence over the naturals (a tree node).
    Seq(Vec<u32>),
    /// A sequence with one appended entry, `σ⌢n`.
    SeqExt(Vec<u32>, u32),
    /// A tag with integer indices, e.g. `c` with `[1, 3]` for a quadrant colour.
    Indexed(String, Vec<i64>),
    /// A tinted colour: component index of a disjoint union plus the original.
    Pair(u32, Box<Color>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColorParseError {
    #[error("missing kind prefix in {0:?}")]
    MissingKind(String),
    #[error("unknown colour kind {0:?}")]
    UnknownKind(String),
    #[error("malformed number in {0:?}")]
    BadNumber(String),
    #[error("malformed tint in {0:?}")]
    BadTint(String),
}

impl Color {
    pub fn atom(text: impl Into<String>) -> Self {
        Color::Atom(text.into())
    }

    pub fn seq(items: &[u32]) -> Self {
        Color::Seq(items.to_vec())
    }

    /// Panics if `tag` contains `.` or `:`; tags are compile-time names.
    pub fn indexed(tag: &str, indices: &[i64]) -> Self {
        assert!(
            !tag.is_empty() && !tag.contains(['.', ':']),
            "invalid colour tag {tag:?}"
        );
        Color::Indexed(tag.to_string(), indices.to_vec())
    }

    /// Wraps this colour in tint `component`. Tinting an already tinted colour
    /// re-tints its inner colour, so pairs never nest at the top level.
    pub fn tinted(&self, component: u32) -> Self {
        match self {
            Color::Pair(_, inner) => Color::Pair(component, inner.clone()),
            other => Color::Pair(component, Box::new(other.clone())),
        }
    }

    /// Tint component, if this is a tinted colour.
    pub fn tint(&self) -> Option<u32> {
        match self {
            Color::Pair(i, _) => Some(*i),
            _ => None,
        }
    }

    pub fn canonical(&self) -> String {
        self.to_string()
    }

    /// Short human label for renderers.
    pub fn label(&self) -> String {
        match self {
            Color::Atom(s) => s.clone(),
            Color::Seq(s) if s.is_empty() => "λ".to_string(),
            Color::Seq(s) => join_digits(s, ""),
            Color::SeqExt(s, n) => format!("{}⌢{n}", join_digits(s, "")),
            Color::Indexed(tag, idx) if idx.is_empty() => tag.clone(),
            Color::Indexed(tag, idx) => format!("{tag}{}", join_ints(idx, ",")),
            Color::Pair(i, c) => format!("{i}:{}", c.label()),
        }
    }
}

fn join_digits(items: &[u32], sep: &str) -> String {
    items.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

fn join_ints(items: &[i64], sep: &str) -> String {
    items.iter().map(i64::to_string).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Atom(s) => write!(f, "atom:{s}"),
            Color::Seq(s) => write!(f, "seq:{}", join_digits(s, ".")),
            Color::SeqExt(s, n) => write!(f, "ext:{}+{n}", join_digits(s, ".")),
            Color::Indexed(tag, idx) => {
                write!(f, "idx:{tag}")?;
                for i in idx {
                    write!(f, ".{i}")?;
                }
                Ok(())
            }
            Color::Pair(i, c) => write!(f, "tint:{i}:({c})"),
        }
    }
}

fn parse_seq(body: &str, whole: &str) -> Result<Vec<u32>, ColorParseError> {
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split('.')
        .map(|p| {
            p.parse::<u32>()
                .map_err(|_| ColorParseError::BadNumber(whole.to_string()))
        })
        .collect()
}

impl FromStr for Color {
    type Err = ColorParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| ColorParseError::MissingKind(s.to_string()))?;
        match kind {
            "atom" => Ok(Color::Atom(body.to_string())),
            "seq" => Ok(Color::Seq(parse_seq(body, s)?)),
            "ext" => {
                let (seq, n) = body
                    .rsplit_once('+')
                    .ok_or_else(|| ColorParseError::BadNumber(s.to_string()))?;
                let n = n
                    .parse()
                    .map_err(|_| ColorParseError::BadNumber(s.to_string()))?;
                Ok(Color::SeqExt(parse_seq(seq, s)?, n))
            }
            "idx" => {
                let mut parts = body.split('.');
                let tag = parts.next().unwrap_or_default();
                if tag.is_empty() {
                    return Err(ColorParseError::BadNumber(s.to_string()));
                }
                let idx = parts
                    .map(|p| {
                        p.parse::<i64>()
                            .map_err(|_| ColorParseError::BadNumber(s.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Color::Indexed(tag.to_string(), idx))
            }
            "tint" => {
                let (i, rest) = body
                    .split_once(':')
                    .ok_or_else(|| ColorParseError::BadTint(s.to_string()))?;
                let i = i
                    .parse()
                    .map_err(|_| ColorParseError::BadTint(s.to_string()))?;
                let inner = rest
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| ColorParseError::BadTint(s.to_string()))?;
                let inner: Color = inner.parse()?;
                if matches!(inner, Color::Pair(..)) {
                    return Err(ColorParseError::BadTint(s.to_string()));
                }
                Ok(Color::Pair(i, Box::new(inner)))
            }
            other => Err(ColorParseError::UnknownKind(other.to_string())),
        }
    }
}

impl Serialize for Color {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_examples() {
        assert_eq!(Color::seq(&[0, 1, 1]).canonical(), "seq:0.1.1");
        assert_eq!(Color::indexed("c", &[1, 3]).canonical(), "idx:c.1.3");
        assert_eq!(Color::atom("B").tinted(2).canonical(), "tint:2:(atom:B)");
        assert_eq!(Color::seq(&[]).canonical(), "seq:");
        assert_eq!(Color::SeqExt(vec![0], 2).canonical(), "ext:0+2");
    }

    #[test]
    fn retinting_does_not_nest() {
        let c = Color::atom("x").tinted(1).tinted(3);
        assert_eq!(c, Color::Pair(3, Box::new(Color::atom("x"))));
        assert!("tint:1:(tint:2:(atom:x))".parse::<Color>().is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("nothing".parse::<Color>().is_err());
        assert!("foo:bar".parse::<Color>().is_err());
        assert!("seq:1.x".parse::<Color>().is_err());
        assert!("tint:1:atom:x".parse::<Color>().is_err());
    }

    fn arb_base() -> impl Strategy<Value = Color> {
        prop_oneof![
            "[ -~]{0,8}".prop_map(Color::Atom),
            prop::collection::vec(0u32..20, 0..5).prop_map(Color::Seq),
            (prop::collection::vec(0u32..20, 0..5), 0u32..9).prop_map(|(s, n)| Color::SeqExt(s, n)),
            ("[a-zA-Z^'_-][a-zA-Z0-9^'_-]{0,4}", prop::collection::vec(-50i64..50, 0..4))
                .prop_map(|(t, i)| Color::Indexed(t, i)),
        ]
    }

    fn arb_color() -> impl Strategy<Value = Color> {
        prop_oneof![
            arb_base(),
            (1u32..9, arb_base()).prop_map(|(i, c)| c.tinted(i)),
        ]
    }

    proptest! {
        #[test]
        fn canonical_round_trip(c in arb_color()) {
            let text = c.canonical();
            let back: Color = text.parse().unwrap();
            prop_assert_eq!(&back, &c);
        }

        #[test]
        fn canonical_is_injective(a in arb_color(), b in arb_color()) {
            prop_assert_eq!(a == b, a.canonical() == b.canonical());
        }
    }
}
