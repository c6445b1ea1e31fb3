//! Recursive-descent parser for the word grammar
//!
//! ```text
//! atom   := "x" DIGITS | "e" | "(" expr ")" | "[" expr "," expr "]"
//! factor := atom ("^" SIGNED_INT)?
//! expr   := factor ("*" factor)*
//! ```
//!
//! Whitespace is ignored everywhere. `[u,v]` denotes `u^-1 v^-1 u v`.

use super::{FreeWord, GenIndex};
use crate::error::{Error, Result};

pub fn parse_word(text: &str, rank: usize) -> Result<FreeWord> {
    if rank == 0 {
        return Err(Error::ZeroRank);
    }
    // Keep the original byte offset of every significant character so errors
    // point into the caller's text.
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut parser = Parser {
        chars,
        pos: 0,
        rank,
        end: text.len(),
    };
    let word = parser.expr()?;
    if parser.pos < parser.chars.len() {
        return Err(parser.error(format!("unexpected {:?}", parser.chars[parser.pos].1)));
    }
    Ok(word)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    rank: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(o, _)| o)
    }

    fn error(&self, msg: String) -> Error {
        Error::Syntax {
            pos: self.offset(),
            msg,
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected {want:?}, found {c:?}"))),
            None => Err(self.error(format!("expected {want:?}, found end of input"))),
        }
    }

    fn digits(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            out.push(c);
            self.pos += 1;
        }
        out
    }

    fn expr(&mut self) -> Result<FreeWord> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FreeWord> {
        let atom = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(atom);
        }
        self.pos += 1;
        let start = self.offset();
        let negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected exponent".into()));
        }
        let magnitude: i64 = digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("exponent {digits} out of range"),
        })?;
        Ok(atom.power(if negative { -magnitude } else { magnitude }))
    }

    fn atom(&mut self) -> Result<FreeWord> {
        match self.peek() {
            Some('x') => {
                let start = self.offset();
                self.pos += 1;
                let digits = self.digits();
                if digits.is_empty() {
                    return Err(self.error("expected generator subscript".into()));
                }
                let index: usize = digits.parse().map_err(|_| Error::Syntax {
                    pos: start,
                    msg: format!("generator subscript {digits} out of range"),
                })?;
                let gen = GenIndex::new(index, self.rank)?;
                FreeWord::generator(self.rank, gen)
            }
            Some('e') => {
                self.pos += 1;
                Ok(FreeWord::identity(self.rank))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.expr()?;
                self.expect(',')?;
                let v = self.expr()?;
                self.expect(']')?;
                u.commutator(&v)
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pairs(w: &FreeWord) -> Vec<(usize, i64)> {
        w.syllables().iter().map(|s| (s.gen.get(), s.exp)).collect()
    }

    #[test]
    fn denotation() {
        assert_eq!(
            pairs(&parse_word("x1*x2^-1", 2).unwrap()),
            [(1, 1), (2, -1)]
        );
        assert!(parse_word("x1*x1^-1", 2).unwrap().is_identity());
        assert_eq!(
            pairs(&parse_word("[x2,x1^3]", 2).unwrap()),
            [(2, -1), (1, -3), (2, 1), (1, 3)]
        );
    }

    #[test]
    fn whitespace_and_grouping() {
        let a = parse_word(" ( x1 * x2 ) ^ 2 ", 2).unwrap();
        assert_eq!(pairs(&a), [(1, 1), (2, 1), (1, 1), (2, 1)]);
        let b = parse_word("x1^2*[x2, x1^2]", 2).unwrap();
        assert_eq!(b.to_string(), "x1^2*x2^-1*x1^-2*x2*x1^2");
        assert!(parse_word("e", 1).unwrap().is_identity());
        assert_eq!(parse_word("x1^+2", 1).unwrap().to_string(), "x1^2");
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_word("x3", 2),
            Err(Error::GeneratorOutOfRange { index: 3, rank: 2 })
        );
        assert!(matches!(
            parse_word("x0", 2),
            Err(Error::GeneratorOutOfRange { .. })
        ));
        assert!(matches!(
            parse_word("x1*", 2),
            Err(Error::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_word("x1 ^", 2),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_word("[x1 x2]", 2),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_word("y1", 2),
            Err(Error::Syntax { pos: 0, .. })
        ));
        assert!(matches!(parse_word("", 2), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_word("x1)", 2),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert_eq!(parse_word("x1", 0), Err(Error::ZeroRank));
    }

    fn arb_word() -> impl Strategy<Value = FreeWord> {
        (
            1usize..5,
            prop::collection::vec((1usize..5, -4i64..=4), 0..12),
        )
            .prop_map(|(rank, raw)| {
                let pairs: Vec<(usize, i64)> = raw
                    .into_iter()
                    .map(|(g, e)| ((g - 1) % rank + 1, e))
                    .collect();
                FreeWord::from_pairs(rank, &pairs).unwrap()
            })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(word in arb_word()) {
            prop_assert_eq!(parse_word(&word.to_string(), word.rank()).unwrap(), word);
        }

        #[test]
        fn group_axioms(a in arb_word(), b in arb_word(), c in arb_word()) {
            let rank = a.rank();
            let lift = |w: &FreeWord| FreeWord::from_pairs(rank,
                &w.syllables().iter().map(|s| ((s.gen.get() - 1) % rank + 1, s.exp)).collect::<Vec<_>>()).unwrap();
            let (b, c) = (lift(&b), lift(&c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a * &a.invert()).is_identity());
            prop_assert_eq!(&FreeWord::identity(rank) * &a, a.clone());
        }

        #[test]
        fn cyclic_reduce_recomposes(word in arb_word()) {
            let (conj, core) = word.cyclic_reduce();
            prop_assert_eq!(&(&conj * &core) * &conj.invert(), word);
            let s = core.syllables();
            if s.len() >= 2 {
                let (first, last) = (s[0], s[s.len() - 1]);
                prop_assert!(first.gen != last.gen || first.exp.signum() == last.exp.signum());
            }
        }

        #[test]
        fn absent_generator_means_subgroup(word in arb_word()) {
            for k in GenIndex::all(word.rank()) {
                if !word.occurs(k) {
                    let others = GenIndex::all(word.rank()).filter(|&g| g != k).collect();
                    prop_assert!(word.in_subgroup(&others));
                }
            }
        }
    }
}
