//! Quandle words and presentations.
//!
//! Text syntax for words:
//!
//! ```text
//! word := NAME | "(" "op" word word ")" | "(" "opinv" word word ")"
//! ```
//!
//! so `(op x (opinv y z))` is `x * (y *⁻¹ z)`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{FreeAlgError, FreeRackElement};
use crate::envelope::GroupPresentation;
use crate::quandle::FiniteQuandle;
use crate::util::disjoint_names;
use crate::word::FreeWord;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QWord {
    Gen(usize),
    Op(Box<QWord>, Box<QWord>),
    OpInv(Box<QWord>, Box<QWord>),
}

impl QWord {
    pub fn gen(g: usize) -> Self {
        QWord::Gen(g)
    }

    pub fn op(a: QWord, b: QWord) -> Self {
        QWord::Op(Box::new(a), Box::new(b))
    }

    pub fn op_inv(a: QWord, b: QWord) -> Self {
        QWord::OpInv(Box::new(a), Box::new(b))
    }

    /// Nesting depth of operations.
    pub fn depth(&self) -> usize {
        match self {
            QWord::Gen(_) => 0,
            QWord::Op(a, b) | QWord::OpInv(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Largest generator index used, plus one.
    pub fn generator_bound(&self) -> usize {
        match self {
            QWord::Gen(g) => g + 1,
            QWord::Op(a, b) | QWord::OpInv(a, b) => a.generator_bound().max(b.generator_bound()),
        }
    }

    pub fn shifted(&self, offset: usize) -> QWord {
        match self {
            QWord::Gen(g) => QWord::Gen(g + offset),
            QWord::Op(a, b) => QWord::op(a.shifted(offset), b.shifted(offset)),
            QWord::OpInv(a, b) => QWord::op_inv(a.shifted(offset), b.shifted(offset)),
        }
    }

    /// The group word `α(w)`: `α(a * b) = α(b)⁻¹ α(a) α(b)`,
    /// `α(a *⁻¹ b) = α(b) α(a) α(b)⁻¹`.
    pub fn envelope(&self) -> FreeWord {
        match self {
            QWord::Gen(g) => FreeWord::gen(*g),
            QWord::Op(a, b) => a.envelope().conjugate_by(&b.envelope()),
            QWord::OpInv(a, b) => a.envelope().conjugate_by(&b.envelope().inverse()),
        }
    }

    /// The equivalent left-normed word `((g₀ *^{ε₁} g₁) *^{ε₂} g₂) …`,
    /// as a base generator and the reduced word `g₁^{ε₁} g₂^{ε₂} …`.
    pub fn flatten(&self) -> FreeRackElement {
        match self {
            QWord::Gen(g) => FreeRackElement::generator(*g),
            QWord::Op(a, b) | QWord::OpInv(a, b) => {
                let (fa, fb) = (a.flatten(), b.flatten());
                let mut g = FreeWord::gen(fb.base);
                if matches!(self, QWord::OpInv(..)) {
                    g = g.inverse();
                }
                FreeRackElement::new(fa.base, fa.word.mul(&g.conjugate_by(&fb.word)))
            }
        }
    }

    /// Value in a finite quandle with `images[g]` for generator `g`.
    pub fn eval(&self, q: &FiniteQuandle, images: &[usize]) -> usize {
        match self {
            QWord::Gen(g) => images[*g],
            QWord::Op(a, b) => q.op(a.eval(q, images), b.eval(q, images)),
            QWord::OpInv(a, b) => q.op_inv(a.eval(q, images), b.eval(q, images)),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            QWord::Gen(g) => names.get(*g).cloned().unwrap_or_else(|| format!("#{g}")),
            QWord::Op(a, b) => format!("(op {} {})", a.render(names), b.render(names)),
            QWord::OpInv(a, b) => format!("(opinv {} {})", a.render(names), b.render(names)),
        }
    }

    pub fn parse(text: &str, names: &[String]) -> Result<QWord, FreeAlgError> {
        let mut p = Parser { text, pos: 0, names };
        let w = p.word()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.error("trailing input"));
        }
        Ok(w)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn error(&self, message: &str) -> FreeAlgError {
        FreeAlgError::Parse { pos: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn atom(&mut self) -> &str {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| c.is_whitespace() || c == '(' || c == ')').unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn expect(&mut self, c: char) -> Result<(), FreeAlgError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> Result<QWord, FreeAlgError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with('(') {
            self.pos += 1;
            let start = self.pos;
            let head = self.atom().to_string();
            let inverse = match head.as_str() {
                "op" => false,
                "opinv" => true,
                _ => {
                    self.pos = start;
                    return Err(self.error("expected `op` or `opinv`"));
                }
            };
            let a = self.word()?;
            let b = self.word()?;
            self.expect(')')?;
            return Ok(if inverse { QWord::op_inv(a, b) } else { QWord::op(a, b) });
        }
        let start = self.pos;
        let name = self.atom().to_string();
        if name.is_empty() {
            return Err(self.error("expected a word"));
        }
        match self.names.iter().position(|n| *n == name) {
            Some(g) => Ok(QWord::Gen(g)),
            None => {
                self.pos = start;
                Err(FreeAlgError::UnknownGenerator(name))
            }
        }
    }
}

/// `⟨X | R⟩` with `R` a list of equalities of quandle words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandlePresentation {
    pub names: Vec<String>,
    pub relations: Vec<(QWord, QWord)>,
}

impl QuandlePresentation {
    pub fn new(names: Vec<String>, relations: Vec<(QWord, QWord)>) -> Result<Self, FreeAlgError> {
        let count = names.len();
        for (a, b) in &relations {
            let bound = a.generator_bound().max(b.generator_bound());
            if bound > count {
                return Err(FreeAlgError::GeneratorOutOfRange { gen: bound - 1, count });
            }
        }
        Ok(Self { names, relations })
    }

    /// Parses relations given as pairs of S-expressions.
    pub fn parse(names: Vec<String>, relations: &[(&str, &str)]) -> Result<Self, FreeAlgError> {
        let rels = relations
            .iter()
            .map(|(a, b)| Ok((QWord::parse(a, &names)?, QWord::parse(b, &names)?)))
            .collect::<Result<Vec<_>, FreeAlgError>>()?;
        Self::new(names, rels)
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    /// Does the assignment `generator g ↦ images[g]` satisfy every relation?
    pub fn satisfied_by(&self, q: &FiniteQuandle, images: &[usize]) -> bool {
        self.relations.iter().all(|(a, b)| a.eval(q, images) == b.eval(q, images))
    }
}

impl fmt::Display for QuandlePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> =
            self.relations.iter().map(|(a, b)| format!("{} = {}", a.render(&self.names), b.render(&self.names))).collect();
        write!(f, "⟨{} | {}⟩", self.names.join(", "), rels.join(", "))
    }
}

/// The table presentation: one generator per element and the relation
/// `x * y = z` for every entry.
pub fn quandle_presentation_of(q: &FiniteQuandle) -> QuandlePresentation {
    let n = q.order();
    let names = match q.names() {
        Some(ns) => ns.to_vec(),
        None => (0..n).map(|i| format!("a{i}")).collect(),
    };
    let relations = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| (QWord::op(QWord::Gen(x), QWord::Gen(y)), QWord::Gen(q.op(x, y))))
        .collect();
    QuandlePresentation { names, relations }
}

/// `⟨X ∪ Y | R ∪ S⟩`; clashing names from `p2` get primes appended.
pub fn presentation_free_product(p1: &QuandlePresentation, p2: &QuandlePresentation) -> Result<QuandlePresentation, FreeAlgError> {
    let offset = p1.num_generators();
    let mut names = p1.names.clone();
    names.extend(disjoint_names(&p1.names, &p2.names).map_err(FreeAlgError::NameClash)?);
    let mut relations = p1.relations.clone();
    relations.extend(p2.relations.iter().map(|(a, b)| (a.shifted(offset), b.shifted(offset))));
    Ok(QuandlePresentation { names, relations })
}

/// `⟨X | α(r) α(s)⁻¹⟩`, one relator per relation (empty ones included, so
/// relator `k` comes from relation `k`).
pub fn envelope_of(p: &QuandlePresentation) -> GroupPresentation {
    let relators = p.relations.iter().map(|(a, b)| a.envelope().mul(&b.envelope().inverse())).collect();
    GroupPresentation { names: p.names.clone(), relators }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::dihedral_quandle;
    use crate::word::Letter;
    use alloc::vec;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_render() {
        let ns = names(&["x", "y", "z"]);
        let w = QWord::parse("(op x (opinv y z))", &ns).unwrap();
        assert_eq!(w, QWord::op(QWord::Gen(0), QWord::op_inv(QWord::Gen(1), QWord::Gen(2))));
        assert_eq!(w.render(&ns), "(op x (opinv y z))");
        assert_eq!(w.depth(), 2);
        assert_eq!(QWord::parse("  y ", &ns).unwrap(), QWord::Gen(1));
        assert!(matches!(QWord::parse("(op x w)", &ns), Err(FreeAlgError::UnknownGenerator(_))));
        assert!(matches!(QWord::parse("(mul x y)", &ns), Err(FreeAlgError::Parse { .. })));
        assert!(matches!(QWord::parse("(op x y", &ns), Err(FreeAlgError::Parse { .. })));
        assert!(matches!(QWord::parse("x y", &ns), Err(FreeAlgError::Parse { .. })));
    }

    #[test]
    fn alpha_and_flattening_agree() {
        let ns = names(&["x", "y", "z"]);
        for text in ["x", "(op x y)", "(op x (opinv y z))", "(opinv (op x y) (op z x))"] {
            let w = QWord::parse(text, &ns).unwrap();
            let f = w.flatten();
            assert_eq!(w.envelope(), FreeWord::gen(f.base).conjugate_by(&f.word), "{text}");
        }
        let f = QWord::parse("(op x (op y z))", &ns).unwrap().flatten();
        assert_eq!(f.word.letters(), &[Letter::neg(2), Letter::pos(1), Letter::pos(2)]);
    }

    #[test]
    fn products_and_envelopes() {
        let t1 = QuandlePresentation::new(names(&["x"]), vec![]).unwrap();
        let fq2 = presentation_free_product(&t1, &t1).unwrap();
        assert_eq!(fq2.names, names(&["x", "x'"]));
        let env = envelope_of(&fq2);
        assert_eq!((env.num_generators(), env.relators.len()), (2, 0));

        let r3 = quandle_presentation_of(&dihedral_quandle(3).unwrap());
        let both = presentation_free_product(&r3, &r3).unwrap();
        let env = envelope_of(&both);
        assert_eq!(env.num_generators(), 6);
        assert_eq!(env.relators.len(), 18);
        assert!(env.relators[9..].iter().all(|r| r.letters().iter().all(|l| l.gen >= 3)));
        assert!(env.relators[..9].iter().all(|r| r.letters().iter().all(|l| l.gen < 3)));
    }

    #[test]
    fn table_presentation_holds_in_its_quandle() {
        let q = dihedral_quandle(5).unwrap();
        let p = quandle_presentation_of(&q);
        let id: Vec<usize> = (0..5).collect();
        assert!(p.satisfied_by(&q, &id));
        assert!(!p.satisfied_by(&q, &[0, 0, 0, 0, 1]));
    }
}
