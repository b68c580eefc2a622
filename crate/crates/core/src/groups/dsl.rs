//! The presentation text format.
//!
//! ```text
//! # Baumslag-Solitar
//! gens x a;
//! eps x=1 a=0;
//! rel x a x^-1 a^-2;
//! ```
//!
//! Statements end with `;`. Besides `gens`, `eps` and `rel` there are
//! `meridian <gen>;` (default: the first generator of degree 1),
//! `longitude <word>;`, `hnn base <gens>;` with `amalg <kernel words>;`
//! (comma separated, letters written `a_nu` or `a_nu^k`), and
//! `meta <flags>;` with flags `knot`, `manifold`, `fibered`,
//! `longitude_in_kk`, `genus=<int>` and `gr=<real>`. Missing `eps` entries
//! are 0. `#` starts a comment.

use std::collections::HashMap;

use super::{AugmentedGroupSystem, HnnData, Metadata, Presentation};
use crate::error::{Error, Result};
use crate::words::{FreeWord, Gen, KernelLetter, KernelWord, Letter};

const MAX_EXPONENT: i64 = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let start = i;
            if c == '#' {
                break;
            } else if c.is_whitespace() {
                i += 1;
                continue;
            } else if c.is_ascii_alphabetic() {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '\'') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Ident(s), line: li + 1, column });
                continue;
            } else if c.is_ascii_digit() || ((c == '-' || c == '+') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit() || *d == '.')) || c == '.' {
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '-' || chars[j] == '+') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Num(s), line: li + 1, column });
                continue;
            } else if "^=;,_".contains(c) {
                out.push(Token { tok: Tok::Sym(c), line: li + 1, column });
                i += 1;
                continue;
            } else {
                return Err(syntax(li + 1, column, format!("unexpected character `{c}`")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.column))
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn at_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Sym(d), .. }) if *d == c)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.at_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Token { tok: Tok::Ident(s), .. }) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected a name")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        match self.peek() {
            Some(Token { tok: Tok::Num(s), .. }) => {
                let v = s.parse::<i64>().map_err(|_| self.err(format!("`{s}` is not an integer")))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected an integer")),
        }
    }

    fn real(&mut self) -> Result<f64> {
        match self.peek() {
            Some(Token { tok: Tok::Num(s), .. }) => {
                let v = s.parse::<f64>().map_err(|_| self.err(format!("`{s}` is not a number")))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if !self.at_sym('^') {
            return Ok(1);
        }
        self.pos += 1;
        let e = self.integer()?;
        if e.abs() > MAX_EXPONENT {
            return Err(self.err("exponent too large"));
        }
        Ok(e)
    }

    fn at_statement_end(&self) -> bool {
        self.peek().is_none() || self.at_sym(';')
    }

    fn generator(&mut self, names: &HashMap<String, Gen>) -> Result<Gen> {
        let here = self.here();
        let name = self.ident()?;
        names
            .get(&name)
            .copied()
            .ok_or_else(|| syntax(here.0, here.1, format!("unknown generator `{name}`")))
    }

    fn word(&mut self, names: &HashMap<String, Gen>) -> Result<FreeWord> {
        let mut w = FreeWord::identity();
        let mut any = false;
        while !self.at_statement_end() {
            if matches!(self.peek(), Some(Token { tok: Tok::Num(s), .. }) if s == "1") {
                self.pos += 1;
                any = true;
                continue;
            }
            let g = self.generator(names)?;
            let e = self.exponent()?;
            for _ in 0..e.unsigned_abs() {
                w.push(Letter::new(g, e < 0));
            }
            any = true;
        }
        if !any {
            return Err(self.err("expected a word"));
        }
        Ok(w)
    }

    fn kernel_word(&mut self, names: &HashMap<String, Gen>) -> Result<KernelWord> {
        let mut w = KernelWord::identity();
        let mut any = false;
        while !self.at_statement_end() && !self.at_sym(',') {
            if matches!(self.peek(), Some(Token { tok: Tok::Num(s), .. }) if s == "1") {
                self.pos += 1;
                any = true;
                continue;
            }
            let g = self.generator(names)?;
            self.expect_sym('_')?;
            let nu = self.integer()?;
            let e = self.exponent()?;
            for _ in 0..e.unsigned_abs() {
                w.push(KernelLetter::new(g, nu, e < 0));
            }
            any = true;
        }
        if !any {
            return Err(self.err("expected a kernel word"));
        }
        Ok(w)
    }
}

#[derive(Default)]
struct Collected {
    gens: Option<Vec<String>>,
    eps: HashMap<Gen, i64>,
    rels: Vec<FreeWord>,
    meridian: Option<Gen>,
    longitude: Option<FreeWord>,
    base: Option<Vec<Gen>>,
    amalg: Option<Vec<KernelWord>>,
    meta: Metadata,
}

pub(super) fn parse(text: &str) -> Result<AugmentedGroupSystem> {
    let toks = lex(text)?;
    let end = (text.lines().count().max(1), text.lines().last().map_or(0, |l| l.chars().count()) + 1);
    let mut p = Parser { toks, pos: 0, end };
    let mut c = Collected::default();
    let mut names: HashMap<String, Gen> = HashMap::new();
    while p.peek().is_some() {
        let (kl, kc) = p.here();
        let keyword = p.ident()?;
        let once = |taken: bool| -> Result<()> {
            if taken {
                Err(syntax(kl, kc, format!("`{keyword}` given twice")))
            } else {
                Ok(())
            }
        };
        if keyword != "gens" && keyword != "meta" && c.gens.is_none() {
            return Err(syntax(kl, kc, "generators must be declared with `gens` first"));
        }
        match keyword.as_str() {
            "gens" => {
                once(c.gens.is_some())?;
                let mut gens = Vec::new();
                while !p.at_statement_end() {
                    let (l, col) = p.here();
                    let name = p.ident()?;
                    if names.insert(name.clone(), gens.len()).is_some() {
                        return Err(syntax(l, col, format!("generator `{name}` declared twice")));
                    }
                    gens.push(name);
                }
                if gens.is_empty() {
                    return Err(p.err("expected at least one generator"));
                }
                c.gens = Some(gens);
            }
            "eps" => {
                while !p.at_statement_end() {
                    let (l, col) = p.here();
                    let g = p.generator(&names)?;
                    p.expect_sym('=')?;
                    let v = p.integer()?;
                    if c.eps.insert(g, v).is_some() {
                        return Err(syntax(l, col, "degree given twice"));
                    }
                }
            }
            "rel" => c.rels.push(p.word(&names)?),
            "meridian" => {
                once(c.meridian.is_some())?;
                c.meridian = Some(p.generator(&names)?);
            }
            "longitude" => {
                once(c.longitude.is_some())?;
                c.longitude = Some(p.word(&names)?);
            }
            "hnn" => {
                once(c.base.is_some())?;
                let (l, col) = p.here();
                if p.ident()? != "base" {
                    return Err(syntax(l, col, "expected `base`"));
                }
                let mut base = Vec::new();
                while !p.at_statement_end() {
                    base.push(p.generator(&names)?);
                }
                c.base = Some(base);
            }
            "amalg" => {
                once(c.amalg.is_some())?;
                let mut words = vec![p.kernel_word(&names)?];
                while p.at_sym(',') {
                    p.pos += 1;
                    words.push(p.kernel_word(&names)?);
                }
                c.amalg = Some(words);
            }
            "meta" => {
                while !p.at_statement_end() {
                    let (l, col) = p.here();
                    let mut flag = p.ident()?;
                    while p.at_sym('_') {
                        p.pos += 1;
                        flag.push('_');
                        flag.push_str(&p.ident()?);
                    }
                    match flag.as_str() {
                        "knot" => c.meta.knot = true,
                        "manifold" => c.meta.manifold = true,
                        "fibered" => c.meta.fibered = true,
                        "longitude_in_kk" => c.meta.longitude_in_commutator = true,
                        "genus" => {
                            p.expect_sym('=')?;
                            let g = p.integer()?;
                            c.meta.genus = Some(u32::try_from(g).map_err(|_| syntax(l, col, "genus must be >= 0"))?);
                        }
                        "gr" => {
                            p.expect_sym('=')?;
                            c.meta.growth_rate = Some(p.real()?);
                        }
                        _ => return Err(syntax(l, col, format!("unknown meta flag `{flag}`"))),
                    }
                }
            }
            _ => return Err(syntax(kl, kc, format!("unknown statement `{keyword}`"))),
        }
        p.expect_sym(';')?;
    }
    let gens = c.gens.ok_or_else(|| syntax(1, 1, "missing `gens` statement"))?;
    let n = gens.len();
    let epsilon: Vec<i64> = (0..n).map(|g| c.eps.get(&g).copied().unwrap_or(0)).collect();
    let meridian = match c.meridian {
        Some(m) => m,
        None => epsilon
            .iter()
            .position(|&e| e == 1)
            .ok_or_else(|| Error::InvalidPresentation("no generator has degree 1".into()))?,
    };
    if c.amalg.is_some() != c.base.is_some() {
        return Err(Error::InvalidPresentation("`hnn base` and `amalg` must be given together".into()));
    }
    let presentation = Presentation::new(gens, c.rels)?;
    let mut sys = AugmentedGroupSystem::new(presentation, epsilon, meridian)?;
    if let Some(l) = c.longitude {
        sys = sys.with_longitude(l)?;
    }
    if let (Some(base), Some(amalgamated)) = (c.base, c.amalg) {
        sys = sys.with_hnn(HnnData { base, amalgamated })?;
    }
    Ok(sys.with_meta(c.meta))
}

pub(super) fn print(sys: &AugmentedGroupSystem) -> String {
    let names = sys.generators();
    let mut out = String::new();
    out.push_str(&format!("gens {};\n", names.join(" ")));
    let eps: Vec<String> = names.iter().zip(&sys.epsilon).map(|(n, e)| format!("{n}={e}")).collect();
    out.push_str(&format!("eps {};\n", eps.join(" ")));
    out.push_str(&format!("meridian {};\n", names[sys.meridian]));
    for r in sys.relators() {
        out.push_str(&format!("rel {};\n", r.display_with(names)));
    }
    if let Some(l) = &sys.longitude {
        out.push_str(&format!("longitude {};\n", l.display_with(names)));
    }
    if let Some(h) = &sys.hnn {
        let base: Vec<&str> = h.base.iter().map(|&g| names[g].as_str()).collect();
        out.push_str(&format!("hnn base {};\n", base.join(" ")));
        let words: Vec<String> = h.amalgamated.iter().map(|w| w.display_with(names)).collect();
        out.push_str(&format!("amalg {};\n", words.join(", ")));
    }
    let m = &sys.meta;
    let mut flags = Vec::new();
    if m.knot {
        flags.push("knot".to_string());
    }
    if m.manifold {
        flags.push("manifold".to_string());
    }
    if let Some(g) = m.genus {
        flags.push(format!("genus={g}"));
    }
    if m.fibered {
        flags.push("fibered".to_string());
    }
    if let Some(gr) = m.growth_rate {
        flags.push(format!("gr={gr:?}"));
    }
    if m.longitude_in_commutator {
        flags.push("longitude_in_kk".to_string());
    }
    if !flags.is_empty() {
        out.push_str(&format!("meta {};\n", flags.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reports_positions() {
        let err = AugmentedGroupSystem::parse("gens x a;\neps x=1;\nrel x b;").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 3,
                column: 7,
                message: "unknown generator `b`".into()
            }
        );
        let err = AugmentedGroupSystem::parse("gens x a;\nrel x a x^-1 a^-2").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }), "{err:?}");
        let err = AugmentedGroupSystem::parse("gens x a; eps x=1; rel x a x^-1 a^-2 %;").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, column: 38, .. }), "{err:?}");
    }

    #[test]
    fn epsilon_inconsistency_names_relator() {
        let err = AugmentedGroupSystem::parse("gens x a; eps x=1 a=0; rel x a a;").unwrap_err();
        assert_eq!(
            err,
            Error::EpsilonInconsistent {
                index: 1,
                relator: "x a^2".into(),
                degree: 1
            }
        );
    }

    #[test]
    fn round_trip_with_all_statements() {
        let text = "# torus-like HNN\n\
                    gens x a b;\n\
                    eps x=1;\n\
                    rel x a x^-1 b^-1;\n\
                    rel a b a^-1 b^-1;\n\
                    longitude a b^-1;\n\
                    hnn base a b;\n\
                    amalg a_0, a_-1^2 b_3;\n\
                    meta knot manifold genus=1 fibered gr=2.618033988749895 longitude_in_kk;\n";
        let sys = AugmentedGroupSystem::parse(text).unwrap();
        assert_eq!(sys.meridian, 0);
        assert_eq!(sys.epsilon, vec![1, 0, 0]);
        let h = sys.hnn.as_ref().unwrap();
        assert_eq!(h.amalgamated[1], KernelWord::from_powers(&[(1, -1, 2), (2, 3, 1)]));
        assert_eq!(sys.meta.growth_rate, Some(2.618033988749895));
        let again = AugmentedGroupSystem::parse(&sys.to_dsl()).unwrap();
        assert_eq!(again, sys);
    }

    #[test]
    fn rejects_amalgamated_letters_outside_base() {
        let text = "gens x a b; eps x=1; rel x a x^-1 b^-1; hnn base a; amalg b_0;";
        assert!(matches!(
            AugmentedGroupSystem::parse(text),
            Err(Error::InvalidPresentation(_))
        ));
    }
}
