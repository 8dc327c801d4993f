//! Vertex labels of the reduced graph and their string form.
//!
//! Strings are `/`-separated with 1-based indices: `Z/i/j/h`, `V/i/j/h/a/b`,
//! `Psi/i/j/h/a/b`, `PsiP/i/j/h/a/b` (primed sentinel), `Y/i/j`, `X/i/j/h`,
//! `U/i/j/h/b`, `P/i/j/idx`, `PP/i/j/idx`. A merged vertex joins its parts
//! with `+`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::gridtiling::Pair;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    Z {
        i: usize,
        j: usize,
        h: u8,
    },
    V {
        i: usize,
        j: usize,
        h: u8,
        pair: Pair,
    },
    Psi {
        i: usize,
        j: usize,
        h: u8,
        pair: Pair,
        primed: bool,
    },
    Y {
        i: usize,
        j: usize,
    },
    X {
        i: usize,
        j: usize,
        h: u8,
    },
    U {
        i: usize,
        j: usize,
        h: u8,
        b: u32,
    },
    /// Interior vertex `idx` (from the `x^3_{i,j}` end) of the vertical connector.
    P {
        i: usize,
        j: usize,
        idx: u32,
    },
    /// Vertex `w_idx` of the horizontal connector leaving `x^2_{i,j}`.
    PP {
        i: usize,
        j: usize,
        idx: u32,
    },
    Merged(Vec<VertexLabel>),
}

/// `h ⊞ 1`: quadrant successor with wraparound.
pub fn succ(h: u8) -> u8 {
    h % 4 + 1
}

impl VertexLabel {
    /// The gadget this vertex belongs to; connector vertices report the
    /// gadget they leave from.
    pub fn cell(&self) -> (usize, usize) {
        use VertexLabel::*;
        match self {
            Z { i, j, .. }
            | V { i, j, .. }
            | Psi { i, j, .. }
            | Y { i, j }
            | X { i, j, .. }
            | U { i, j, .. }
            | P { i, j, .. }
            | PP { i, j, .. } => (*i, *j),
            Merged(parts) => parts[0].cell(),
        }
    }

    pub fn is_connector(&self) -> bool {
        matches!(self, VertexLabel::P { .. } | VertexLabel::PP { .. })
    }

    /// Atomic labels: itself, or the parts of a merged label.
    pub fn parts(&self) -> &[VertexLabel] {
        match self {
            VertexLabel::Merged(parts) => parts,
            other => std::slice::from_ref(other),
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use VertexLabel::*;
        match self {
            Z { i, j, h } => write!(f, "Z/{i}/{j}/{h}"),
            V { i, j, h, pair } => write!(f, "V/{i}/{j}/{h}/{}/{}", pair.a, pair.b),
            Psi { i, j, h, pair, primed } => {
                let tag = if *primed { "PsiP" } else { "Psi" };
                write!(f, "{tag}/{i}/{j}/{h}/{}/{}", pair.a, pair.b)
            }
            Y { i, j } => write!(f, "Y/{i}/{j}"),
            X { i, j, h } => write!(f, "X/{i}/{j}/{h}"),
            U { i, j, h, b } => write!(f, "U/{i}/{j}/{h}/{b}"),
            P { i, j, idx } => write!(f, "P/{i}/{j}/{idx}"),
            PP { i, j, idx } => write!(f, "PP/{i}/{j}/{idx}"),
            Merged(parts) => {
                for (k, p) in parts.iter().enumerate() {
                    if k > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_atomic(s: &str) -> Option<VertexLabel> {
    use VertexLabel::*;
    let mut it = s.split('/');
    let tag = it.next()?;
    let nums: Vec<u64> = it.map(|t| t.parse().ok()).collect::<Option<_>>()?;
    if nums.contains(&0) {
        return None;
    }
    let (i, j) = (*nums.first()? as usize, *nums.get(1)? as usize);
    let h = || -> Option<u8> {
        let h = *nums.get(2)?;
        (1..=4).contains(&h).then_some(h as u8)
    };
    let pair = || -> Option<Pair> { Some(Pair::new(*nums.get(3)? as u32, *nums.get(4)? as u32)) };
    let label = match (tag, nums.len()) {
        ("Z", 3) => Z { i, j, h: h()? },
        ("V", 5) => V {
            i,
            j,
            h: h()?,
            pair: pair()?,
        },
        ("Psi", 5) => Psi {
            i,
            j,
            h: h()?,
            pair: pair()?,
            primed: false,
        },
        ("PsiP", 5) => Psi {
            i,
            j,
            h: h()?,
            pair: pair()?,
            primed: true,
        },
        ("Y", 2) => Y { i, j },
        ("X", 3) => X { i, j, h: h()? },
        ("U", 4) => {
            let h = h()?;
            if h != 1 && h != 3 {
                return None;
            }
            U {
                i,
                j,
                h,
                b: nums[3] as u32,
            }
        }
        ("P", 3) => P {
            i,
            j,
            idx: nums[2] as u32,
        },
        ("PP", 3) => PP {
            i,
            j,
            idx: nums[2] as u32,
        },
        _ => return None,
    };
    Some(label)
}

impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let parts: Option<Vec<VertexLabel>> = s.split('+').map(parse_atomic).collect();
        match parts {
            Some(mut p) if p.len() == 1 => Ok(p.pop().expect("one part")),
            Some(p) => Ok(VertexLabel::Merged(p)),
            None => Err(Error::UnknownLabel(s.to_string())),
        }
    }
}
