use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// A finite presentation `⟨generators | relators⟩`.
///
/// Relator letters refer to generators by position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        GroupPresentation { generators, relators }
    }

    /// Generators named `g1, g2, …`.
    pub fn with_count(count: usize, relators: Vec<Word>) -> Self {
        GroupPresentation { generators: (1..=count).map(|i| format!("g{i}")).collect(), relators }
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    /// Sum of relator lengths.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Every letter names an existing generator.
    pub fn is_well_formed(&self) -> bool {
        let g = self.generators.len() as u32;
        self.relators.iter().all(|w| w.iter().all(|l| l.id < g))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("presentations serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: GroupPresentation = serde_json::from_str(text)?;
        if !p.is_well_formed() {
            return Err(Error::parse(1, "relator refers to a missing generator"));
        }
        Ok(p)
    }

    /// Parses `< a, b | a b a^-1 b^-1, b^3 >`. Exponents `^k` with any nonzero
    /// integer `k` are expanded; `1` denotes the empty word.
    pub fn parse(text: &str) -> Result<Self> {
        let body = text.trim();
        let body = body
            .strip_prefix('<')
            .and_then(|b| b.strip_suffix('>'))
            .ok_or_else(|| Error::parse(1, "a presentation is written < generators | relators >"))?;
        let (gens, rels) = body.split_once('|').ok_or_else(|| Error::parse(1, "missing '|'"))?;
        let generators: Vec<String> = gens.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
        for (i, g) in generators.iter().enumerate() {
            if !g.chars().all(|c| c.is_alphanumeric() || c == '_') || g == "1" {
                return Err(Error::parse(1, format!("bad generator name {g:?}")));
            }
            if generators[..i].contains(g) {
                return Err(Error::parse(1, format!("generator {g} listed twice")));
            }
        }
        let lookup = |name: &str| -> Result<u32> {
            generators
                .iter()
                .position(|g| g == name)
                .map(|i| i as u32)
                .ok_or_else(|| Error::parse(1, format!("unknown generator {name}")))
        };
        let mut relators = Vec::new();
        for rel in rels.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let mut w = Word::empty();
            for tok in rel.split_whitespace() {
                if tok == "1" {
                    continue;
                }
                let (name, exp) = match tok.split_once('^') {
                    Some((n, e)) => {
                        let e: i64 = e.parse().map_err(|_| Error::parse(1, format!("bad exponent in {tok}")))?;
                        (n, e)
                    }
                    None => (tok, 1),
                };
                let id = lookup(name)?;
                for _ in 0..exp.unsigned_abs() {
                    w.push(Letter { id, inverse: exp < 0 });
                }
            }
            relators.push(w);
        }
        Ok(GroupPresentation { generators, relators })
    }

    fn write_word(&self, f: &mut fmt::Formatter<'_>, w: &Word) -> fmt::Result {
        if w.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in w.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.generators[l.id as usize])?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {}", self.generators.join(", "))?;
        f.write_str(if self.generators.is_empty() { "| " } else { " | " })?;
        for (i, w) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            self.write_word(f, w)?;
        }
        f.write_str(if self.relators.is_empty() { ">" } else { " >" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let p = GroupPresentation::parse("< x, y | x^2 y^-3 >").unwrap();
        assert_eq!(p.relators[0], Word::from_signed(&[1, 1, -2, -2, -2]));
        assert_eq!(p.to_string(), "< x, y | x x y^-1 y^-1 y^-1 >");
        assert_eq!(GroupPresentation::parse(&p.to_string()).unwrap(), p);

        let trivial = GroupPresentation::default();
        assert_eq!(trivial.to_string(), "< | >");
        assert_eq!(GroupPresentation::parse("< | >").unwrap(), trivial);
        assert_eq!(GroupPresentation::parse("<a|>").unwrap().to_string(), "< a | >");
    }

    #[test]
    fn json_round_trip() {
        let p = GroupPresentation::parse("< a, b | a b a^-1 b^-1 >").unwrap();
        let j = p.to_json();
        assert_eq!(j, r#"{"generators":["a","b"],"relators":[[1,2,-1,-2]]}"#);
        assert_eq!(GroupPresentation::from_json(&j).unwrap(), p);
        assert!(GroupPresentation::from_json(r#"{"generators":["a"],"relators":[[2]]}"#).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(GroupPresentation::parse("x, y | x").is_err());
        assert!(GroupPresentation::parse("< x | y >").is_err());
        assert!(GroupPresentation::parse("< x, x | x >").is_err());
        assert!(GroupPresentation::parse("< x | x^a >").is_err());
    }
}
