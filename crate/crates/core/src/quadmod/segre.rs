use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A Segre symbol such as `[(21)11]`: one group per root of the pencil
/// discriminant, listing the Jordan block sizes at that root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SegreSymbol {
    groups: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("malformed Segre symbol {0:?}")]
pub struct SegreParseError(pub String);

impl SegreSymbol {
    /// Normalizes: parts decreasing in each group, groups ordered by total
    /// size, then part count, then parts, all decreasing.
    pub fn new(groups: Vec<Vec<u32>>) -> SegreSymbol {
        let mut groups: Vec<Vec<u32>> = groups
            .into_iter()
            .filter(|g| !g.is_empty())
            .map(|mut g| {
                g.sort_by(|a, b| b.cmp(a));
                g
            })
            .collect();
        groups.sort_by(|a, b| {
            let sa: u32 = a.iter().sum();
            let sb: u32 = b.iter().sum();
            sb.cmp(&sa).then(b.len().cmp(&a.len())).then(b.cmp(a))
        });
        SegreSymbol { groups }
    }

    pub fn parse(s: &str) -> Result<SegreSymbol, SegreParseError> {
        let err = || SegreParseError(s.into());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(err)?;
        let mut groups = Vec::new();
        let mut open: Option<Vec<u32>> = None;
        for ch in inner.chars() {
            match (ch, open.as_mut()) {
                ('(', None) => open = Some(Vec::new()),
                (')', Some(g)) if !g.is_empty() => groups.push(open.take().ok_or_else(err)?),
                (d, Some(g)) if d.is_ascii_digit() && d != '0' => g.push(d as u32 - '0' as u32),
                (d, None) if d.is_ascii_digit() && d != '0' => {
                    groups.push(alloc::vec![d as u32 - '0' as u32])
                }
                (' ', _) => {}
                _ => return Err(err()),
            }
        }
        if open.is_some() || groups.is_empty() {
            return Err(err());
        }
        Ok(SegreSymbol::new(groups))
    }

    pub fn groups(&self) -> &[Vec<u32>] {
        &self.groups
    }

    /// Sum of all parts; 5 for a pencil of quadrics in `P^4`.
    pub fn size(&self) -> u32 {
        self.groups.iter().flatten().sum()
    }

    /// `(a, b, c)`: groups `[1]`, single-part groups with part `> 1`, and
    /// groups with several parts.
    pub fn morphism_split(&self) -> (usize, usize, usize) {
        let a = self.groups.iter().filter(|g| g.as_slice() == [1]).count();
        let b = self
            .groups
            .iter()
            .filter(|g| g.len() == 1 && g[0] > 1)
            .count();
        let c = self.groups.iter().filter(|g| g.len() > 1).count();
        (a, b, c)
    }
}

impl fmt::Display for SegreSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for g in &self.groups {
            if g.len() > 1 {
                f.write_str("(")?;
            }
            for p in g {
                write!(f, "{p}")?;
            }
            if g.len() > 1 {
                f.write_str(")")?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parse_and_format() {
        for s in [
            "[11111]",
            "[(21)11]",
            "[(11)(11)1]",
            "[5]",
            "[(311)]",
            "[32]",
        ] {
            assert_eq!(SegreSymbol::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(
            SegreSymbol::parse("[1(12)1]").unwrap().to_string(),
            "[(21)11]"
        );
        assert!(SegreSymbol::parse("[(21]").is_err());
        assert!(SegreSymbol::parse("21").is_err());
        assert!(SegreSymbol::parse("[]").is_err());
    }

    #[test]
    fn split() {
        assert_eq!(
            SegreSymbol::parse("[(21)11]").unwrap().morphism_split(),
            (2, 0, 1)
        );
        assert_eq!(
            SegreSymbol::parse("[2111]").unwrap().morphism_split(),
            (3, 1, 0)
        );
    }
}
