use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;


use crate::error::{Error, Result};
use crate::graph::DynkinGraph;
use crate::scalar::Scalar;
use crate::vector::Weight;

/// A basis vector of a cocycle Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisSymbol {
    /// `h_i`, vertex index `i`.
    Cartan(usize),
    /// `ẽ_α` for a real root `α` (negative roots occur only in `g^ε`).
    Root(Weight),
    /// `α_k(n)` in the imaginary root space of grading `n·δ`.
    Imaginary { vertex: usize, degree: u32 },
}

impl BasisSymbol {
    pub fn root(coords: &[i32]) -> Self {
        BasisSymbol::Root(Weight::new(coords.to_vec()))
    }

    /// Text form: `e[2,1,1,1]`, `h1(3)` (imaginary, vertex label 1, degree 3),
    /// `H0` (Cartan, vertex label 0).
    pub fn render(&self, graph: &DynkinGraph) -> String {
        match self {
            BasisSymbol::Cartan(i) => format!("H{}", graph.label(*i)),
            BasisSymbol::Root(w) => format!("e[{}]", w.encode()),
            BasisSymbol::Imaginary { vertex, degree } => format!("h{}({degree})", graph.label(*vertex)),
        }
    }

    pub fn parse(s: &str, graph: &DynkinGraph) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::input(format!("bad basis symbol `{s}`"));
        if let Some(inner) = s.strip_prefix("e[").and_then(|r| r.strip_suffix(']')) {
            return Ok(BasisSymbol::Root(Weight::parse(inner, graph.n_vertices())?));
        }
        if let Some(rest) = s.strip_prefix('H') {
            let label: u32 = rest.parse().map_err(|_| bad())?;
            return Ok(BasisSymbol::Cartan(graph.vertex_of(label)?));
        }
        if let Some(rest) = s.strip_prefix('h') {
            let (label, deg) = rest.split_once('(').ok_or_else(bad)?;
            let deg = deg.strip_suffix(')').ok_or_else(bad)?;
            let label: u32 = label.parse().map_err(|_| bad())?;
            let degree: u32 = deg.parse().map_err(|_| bad())?;
            if degree == 0 {
                return Err(Error::input(format!("imaginary symbol `{s}` needs degree >= 1")));
            }
            return Ok(BasisSymbol::Imaginary {
                vertex: graph.vertex_of(label)?,
                degree,
            });
        }
        Err(bad())
    }
}

/// A finite linear combination of basis symbols. Zero coefficients are never
/// stored, so structural equality is equality of elements.
#[derive(Debug, Clone, PartialEq)]
pub struct LieElement<T: Scalar> {
    terms: BTreeMap<BasisSymbol, T>,
}

impl<T: Scalar> Default for LieElement<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> LieElement<T> {
    pub fn zero() -> Self {
        LieElement { terms: BTreeMap::new() }
    }

    pub fn basis(symbol: BasisSymbol) -> Self {
        Self::term(symbol, T::one())
    }

    pub fn term(symbol: BasisSymbol, coeff: T) -> Self {
        let mut e = Self::zero();
        e.add_term(symbol, coeff);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisSymbol, T)>) -> Self {
        let mut e = Self::zero();
        for (s, c) in terms {
            e.add_term(s, c);
        }
        e
    }

    pub fn add_term(&mut self, symbol: BasisSymbol, coeff: T) {
        if coeff.is_negligible() {
            return;
        }
        match self.terms.remove(&symbol) {
            Some(old) => {
                let sum = old + coeff;
                if !sum.is_negligible() {
                    self.terms.insert(symbol, sum);
                }
            }
            None => {
                self.terms.insert(symbol, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisSymbol, &T)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, symbol: &BasisSymbol) -> T {
        self.terms.get(symbol).cloned().unwrap_or_else(T::zero)
    }

    pub fn scaled(&self, k: &T) -> Self {
        Self::from_terms(self.terms.iter().map(|(s, c)| (s.clone(), c.clone() * k.clone())))
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-T::one())
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut e = self.clone();
        for (s, c) in &other.terms {
            e.add_term(s.clone(), c.clone());
        }
        e
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.neg())
    }

    /// `Some(c)` if `self = c·other` for a scalar `c` (and both are nonzero).
    pub fn ratio_to(&self, other: &Self) -> Option<T> {
        let (s, c) = other.terms.iter().next()?;
        let k = self.terms.get(s)?.clone() / c.clone();
        (other.scaled(&k) == *self).then_some(k)
    }

    /// Signed sum such as `1*e[1,1] - 2*h1(3)`; the zero element is `0`.
    pub fn render(&self, graph: &DynkinGraph) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (s, c)) in self.terms.iter().enumerate() {
            let neg = *c < T::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&format!("{mag}*{}", s.render(graph)));
        }
        out
    }

    pub fn parse(s: &str, graph: &DynkinGraph) -> Result<Self>
    where
        T: FromStr,
    {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut current = String::new();
        let mut negative = false;
        for (pos, ch) in compact.chars().enumerate() {
            match ch {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') {
                if pos > 0 {
                    chunks.push((negative, std::mem::take(&mut current)));
                }
                negative = ch == '-';
                continue;
            }
            current.push(ch);
        }
        chunks.push((negative, current));
        let mut e = Self::zero();
        for (neg, chunk) in chunks {
            if chunk.is_empty() {
                return Err(Error::input(format!("bad element `{s}`")));
            }
            let (coeff, sym) = match chunk.split_once('*') {
                Some((c, sym)) => (
                    c.parse::<T>()
                        .map_err(|_| Error::input(format!("bad coefficient `{c}` in `{s}`")))?,
                    sym,
                ),
                None => (T::one(), chunk.as_str()),
            };
            let coeff = if neg { -coeff } else { coeff };
            e.add_term(BasisSymbol::parse(sym, graph)?, coeff);
        }
        Ok(e)
    }
}

/// Lifts integer structure constants into the scalar type.
pub(crate) fn from_int_terms<T: Scalar>(terms: Vec<(BasisSymbol, i64)>) -> LieElement<T> {
    LieElement::from_terms(terms.into_iter().map(|(s, c)| (s, T::from_int(c))))
}

impl<T: Scalar> fmt::Display for LieElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(s, c)| format!("({c})*{s:?}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::Rational;

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = LieElement::<Rational>::basis(BasisSymbol::root(&[1, 0]));
        let z = a.minus(&a);
        assert!(z.is_zero());
        assert_eq!(z, LieElement::zero());
    }

    #[test]
    fn text_round_trip() {
        let g = build_graph("D~4").unwrap();
        let e = LieElement::<Rational>::parse("2*e[1,0,0,0,1] - 1/2*h1(3) + H0 - 3*e[-1,0,0,0,-1]", &g).unwrap();
        assert_eq!(e.len(), 4);
        let text = e.render(&g);
        assert_eq!(LieElement::<Rational>::parse(&text, &g).unwrap(), e);
        assert_eq!(LieElement::<Rational>::parse("0", &g).unwrap(), LieElement::zero());
        assert!(LieElement::<Rational>::parse("2*x[1]", &g).is_err());
        assert!(LieElement::<Rational>::parse("h1(0)", &g).is_err());
    }

    #[test]
    fn ratio_detects_scalar_multiples() {
        let g = build_graph("A2").unwrap();
        let a = LieElement::<Rational>::parse("e[1,0] - e[0,1]", &g).unwrap();
        let b = LieElement::<Rational>::parse("-2*e[1,0] + 2*e[0,1]", &g).unwrap();
        assert_eq!(b.ratio_to(&a), Some(Rational::from_int(-2)));
        let c = LieElement::<Rational>::parse("e[1,0] + e[0,1]", &g).unwrap();
        assert_eq!(c.ratio_to(&a), None);
    }
}
