//! Group-spec strings: `Sym(n)`, `Alt(n)`, `Cyclic(n)`, `Dihedral(n)` and
//! `Perm(degree; perm, perm, ...)` with perms written in 1-based cycle notation.

use std::iter::Peekable;
use std::str::Chars;

use super::group::{PermGroup, DEFAULT_ORDER_BOUND};
use super::perm::Perm;
use crate::error::{Error, Result};

/// Parses a group spec and generates the group, using [`DEFAULT_ORDER_BOUND`].
pub fn group_from_spec(spec: &str) -> Result<PermGroup> {
    group_from_spec_bounded(spec, DEFAULT_ORDER_BOUND)
}

pub fn group_from_spec_bounded(spec: &str, bound: usize) -> Result<PermGroup> {
    let parsed = parse_spec(spec)?;
    let (degree, gens) = parsed.generators()?;
    let label = parsed.normalized(&gens);
    Ok(PermGroup::generate(degree, gens, bound)?.with_label(label))
}

/// Parses a single permutation such as `(1 2)(3 4)`; `()` is the identity.
pub fn parse_perm(degree: usize, text: &str) -> Result<Perm> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let cycles = if p.peek() == Some('(') && p.lookahead_is_empty_cycle() {
        p.expect('(')?;
        p.expect(')')?;
        Vec::new()
    } else {
        p.cycles()?
    };
    p.end()?;
    Perm::from_cycles(degree, &cycles)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Spec {
    Sym(usize),
    Alt(usize),
    Cyclic(usize),
    Dihedral(usize),
    Perm(usize, Vec<Vec<Vec<usize>>>),
}

impl Spec {
    fn generators(&self) -> Result<(usize, Vec<Perm>)> {
        let positive = |n: usize, name: &str| {
            if n == 0 {
                Err(Error::Invalid(format!("{name}(0) is not a group on a nonempty set")))
            } else {
                Ok(n)
            }
        };
        let cycle = |pts: Vec<usize>, n: usize| Perm::from_cycles(n, &[pts]);
        match *self {
            Spec::Sym(n) => {
                let n = positive(n, "Sym")?;
                let mut gens = Vec::new();
                if n >= 3 {
                    gens.push(cycle((1..=n).collect(), n)?);
                }
                if n >= 2 {
                    gens.push(cycle(vec![1, 2], n)?);
                }
                Ok((n, gens))
            }
            Spec::Alt(n) => {
                let n = positive(n, "Alt")?;
                let gens = (3..=n).map(|k| cycle(vec![1, 2, k], n)).collect::<Result<_>>()?;
                Ok((n, gens))
            }
            Spec::Cyclic(n) => {
                let n = positive(n, "Cyclic")?;
                let gens = if n >= 2 { vec![cycle((1..=n).collect(), n)?] } else { Vec::new() };
                Ok((n, gens))
            }
            Spec::Dihedral(n) => {
                if n < 3 {
                    return Err(Error::Invalid(format!(
                        "Dihedral({n}) has no faithful action on {n} points; use n >= 3"
                    )));
                }
                let rotation = cycle((1..=n).collect(), n)?;
                let swaps: Vec<Vec<usize>> =
                    (2..).take_while(|&i| i < n + 2 - i).map(|i| vec![i, n + 2 - i]).collect();
                let reflection = Perm::from_cycles(n, &swaps)?;
                Ok((n, vec![rotation, reflection]))
            }
            Spec::Perm(degree, ref perms) => {
                let degree = positive(degree, "Perm")?;
                let gens = perms
                    .iter()
                    .map(|cycles| Perm::from_cycles(degree, cycles))
                    .collect::<Result<_>>()?;
                Ok((degree, gens))
            }
        }
    }

    fn normalized(&self, gens: &[Perm]) -> String {
        match self {
            Spec::Sym(n) => format!("Sym({n})"),
            Spec::Alt(n) => format!("Alt({n})"),
            Spec::Cyclic(n) => format!("Cyclic({n})"),
            Spec::Dihedral(n) => format!("Dihedral({n})"),
            Spec::Perm(degree, perms) => {
                let parts: Vec<String> = perms
                    .iter()
                    .zip(gens)
                    .map(|(cycles, g)| {
                        if g.is_identity() {
                            // keep the user's trivial cycles so the string still parses
                            cycles
                                .iter()
                                .map(|c| {
                                    let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                                    format!("({})", pts.join(" "))
                                })
                                .collect()
                        } else {
                            g.to_string()
                        }
                    })
                    .collect();
                format!("Perm({degree}; {})", parts.join(", "))
            }
        }
    }
}

fn parse_spec(text: &str) -> Result<Spec> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let name = p.ident();
    p.expect('(')?;
    let spec = match name.as_str() {
        "Sym" => Spec::Sym(p.number()?),
        "Alt" => Spec::Alt(p.number()?),
        "Cyclic" => Spec::Cyclic(p.number()?),
        "Dihedral" => Spec::Dihedral(p.number()?),
        "Perm" => {
            let degree = p.number()?;
            p.expect(';')?;
            let mut perms = vec![p.cycles()?];
            loop {
                p.skip_ws();
                if p.peek() == Some(',') {
                    p.bump();
                    perms.push(p.cycles()?);
                } else {
                    break;
                }
            }
            Spec::Perm(degree, perms)
        }
        "" => return Err(Error::Parse(format!("expected a group name in {text:?}"))),
        other => return Err(Error::Parse(format!("unknown group name {other:?}"))),
    };
    p.expect(')')?;
    p.end()?;
    Ok(spec)
}

struct Parser<'a> {
    src: &'a str,
    chars: Peekable<Chars<'a>>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, chars: src.chars().peekable() }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.chars.next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in {:?}", self.src))
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_alphabetic) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.bump() == Some(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.bump();
        }
        digits.parse().map_err(|_| self.err("expected a positive integer"))
    }

    fn lookahead_is_empty_cycle(&self) -> bool {
        let mut it = self.chars.clone();
        it.next();
        it.find(|c| !c.is_whitespace()) == Some(')')
    }

    /// `cycle+`
    fn cycles(&mut self) -> Result<Vec<Vec<usize>>> {
        let mut cycles = Vec::new();
        loop {
            self.skip_ws();
            if self.peek() != Some('(') {
                break;
            }
            self.bump();
            let mut pts = vec![self.number()?];
            loop {
                self.skip_ws();
                match self.peek() {
                    Some(')') => {
                        self.bump();
                        break;
                    }
                    Some(c) if c.is_ascii_digit() => pts.push(self.number()?),
                    _ => return Err(self.err("malformed cycle")),
                }
            }
            cycles.push(pts);
        }
        if cycles.is_empty() {
            return Err(self.err("expected a permutation in cycle notation"));
        }
        Ok(cycles)
    }

    fn end(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.err("trailing input")),
        }
    }
}
