use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::VertexSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            Side::One => 0,
            Side::Two => 1,
        }
    }
}

/// Two-colouring of the vertex set; side `One` is `V₁`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    sides: Vec<Side>,
}

impl Bipartition {
    pub fn new(sides: Vec<Side>) -> Self {
        Bipartition { sides }
    }

    pub fn all(n: usize, side: Side) -> Self {
        Bipartition { sides: vec![side; n] }
    }

    /// `V₁ = ones`, everything else in `V₂`.
    pub fn from_set(ones: &VertexSet) -> Self {
        let sides = (0..ones.universe()).map(|v| if ones.contains(v) { Side::One } else { Side::Two }).collect();
        Bipartition { sides }
    }

    /// Bit `v` of `mask` set means `v ∈ V₁`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let sides = (0..n).map(|v| if mask >> v & 1 == 1 { Side::One } else { Side::Two }).collect();
        Bipartition { sides }
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn side(&self, v: usize) -> Side {
        self.sides[v]
    }

    pub fn set_side(&mut self, v: usize, side: Side) {
        self.sides[v] = side;
    }

    pub fn flip(&mut self, v: usize) {
        self.sides[v] = self.sides[v].other();
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn part(&self, side: Side) -> VertexSet {
        let mut s = VertexSet::empty(self.len());
        for (v, &x) in self.sides.iter().enumerate() {
            if x == side {
                s.insert(v);
            }
        }
        s
    }

    /// Exchanges `V₁` and `V₂`.
    pub fn swapped(&self) -> Self {
        Bipartition { sides: self.sides.iter().map(|s| s.other()).collect() }
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sides {
            f.write_str(match s {
                Side::One => "1",
                Side::Two => "2",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bipartition({self})")
    }
}

impl FromStr for Bipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sides = s
            .trim()
            .chars()
            .map(|c| match c {
                '1' => Ok(Side::One),
                '2' => Ok(Side::Two),
                other => Err(Error::Parse { line: 1, msg: format!("bad side label {other:?}") }),
            })
            .collect::<Result<_>>()?;
        Ok(Bipartition { sides })
    }
}

impl Serialize for Bipartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Arc counts of a bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CutStats {
    /// `e(V₁, V₂)`
    pub e12: usize,
    /// `e(V₂, V₁)`
    pub e21: usize,
    /// `e(V₁)`
    pub inside1: usize,
    /// `e(V₂)`
    pub inside2: usize,
    /// `min(e12, e21)`
    pub value: usize,
}

impl CutStats {
    pub fn new(e12: usize, e21: usize, inside1: usize, inside2: usize) -> Self {
        CutStats { e12, e21, inside1, inside2, value: e12.min(e21) }
    }

    pub fn total(&self) -> usize {
        self.e12 + self.e21 + self.inside1 + self.inside2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        let p: Bipartition = "1221".parse().unwrap();
        assert_eq!(p.to_string(), "1221");
        assert_eq!(p.swapped().to_string(), "2112");
        assert_eq!(p.part(Side::Two).to_vec(), vec![1, 2]);
        assert!("12x".parse::<Bipartition>().is_err());
        assert_eq!(Bipartition::from_mask(3, 0b101).to_string(), "121");
    }
}
