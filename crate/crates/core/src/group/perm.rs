//! Permutations of `{1..degree}` in cycle notation.

use std::fmt;

use super::GroupError;

/// A permutation stored as its image table on 0-based points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(GroupError::Malformed(format!("image table {images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `()`; points are 1-based and may be
    /// separated by spaces or commas.
    pub fn parse(degree: usize, text: &str) -> Result<Self, GroupError> {
        let malformed = |why: &str| GroupError::Malformed(format!("`{text}`: {why}"));
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(malformed("empty permutation; write `()` for the identity"));
        }
        while !rest.is_empty() {
            let body_start = rest.strip_prefix('(').ok_or_else(|| malformed("expected `(`"))?;
            let close = body_start.find(')').ok_or_else(|| malformed("unclosed cycle"))?;
            let body = &body_start[..close];
            rest = body_start[close + 1..].trim_start();
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
                let point: usize = tok.parse().map_err(|_| malformed(&format!("bad point `{tok}`")))?;
                if point == 0 || point > degree {
                    return Err(malformed(&format!("point {point} outside 1..={degree}")));
                }
                if used[point - 1] {
                    return Err(malformed(&format!("point {point} repeated")));
                }
                used[point - 1] = true;
                cycle.push(point - 1);
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut wrote = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.images[p] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = Permutation::parse(5, "(1 2 3)(4,5)").unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::parse(3, "()").unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::identity(2).to_string(), "()");
        assert_eq!(Permutation::parse(3, " (1 3) ").unwrap().to_string(), "(1 3)");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "(1 4)", "(0 1)", "(1 2", "1 2", "(1 2)(2 3)", "(1 x)"] {
            assert!(Permutation::parse(3, bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn compose_and_inverse() {
        let a = Permutation::parse(3, "(1 2)").unwrap();
        let b = Permutation::parse(3, "(1 2 3)").unwrap();
        // apply b then a: 1→2→1, 2→3→3, 3→1→2
        assert_eq!(a.compose(&b).to_string(), "(2 3)");
        assert!(b.compose(&b.inverse()).is_identity());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }
}
