//! The optical-chain mini-language.
//!
//! ```text
//! chain   := element (whitespace element)*
//! element := name '(' number (',' number)* ')'
//! ```
//!
//! Elements are listed in the order the beam meets them. Angles are in
//! radians unless the caller converts from degrees.

use std::fmt;

use num_complex::Complex64;
use spinoptics::lens::{lens, translation};
use spinoptics::sl2c::{attenuation, phase_shift, rotation, x_boost, Sl2c};
use spinoptics::{OpticsError, Tolerances};
use thiserror::Error;

/// Determinant slack accepted for `mat(...)` literals.
pub const MAT_DET_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChainError {
    #[error("empty chain")]
    Empty,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown element '{name}' at position {position}")]
    UnknownElement { position: usize, name: String },
    #[error(
        "arity error at position {position}: {name} expects {expected} argument(s), found {found}"
    )]
    Arity {
        position: usize,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("non-finite literal '{literal}' at position {position}")]
    NonFinite { position: usize, literal: String },
    #[error("mat(...) at position {position} has determinant {det}, not 1 within {MAT_DET_TOL:e}")]
    Determinant { position: usize, det: Complex64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Element {
    Phase(f64),
    Rot(f64),
    Atten(f64),
    XBoost(f64),
    Lens(f64),
    Dist(f64),
    /// `alpha_re, alpha_im, beta_re, beta_im, gamma_re, gamma_im, delta_re, delta_im`.
    Mat([f64; 8]),
}

impl Element {
    pub fn name(&self) -> &'static str {
        match self {
            Element::Phase(_) => "phase",
            Element::Rot(_) => "rot",
            Element::Atten(_) => "atten",
            Element::XBoost(_) => "xboost",
            Element::Lens(_) => "lens",
            Element::Dist(_) => "dist",
            Element::Mat(_) => "mat",
        }
    }

    fn arity(name: &str) -> Option<usize> {
        match name {
            "phase" | "rot" | "atten" | "xboost" | "lens" | "dist" => Some(1),
            "mat" => Some(8),
            _ => None,
        }
    }

    fn from_parts(name: &str, args: &[f64]) -> Element {
        match name {
            "phase" => Element::Phase(args[0]),
            "rot" => Element::Rot(args[0]),
            "atten" => Element::Atten(args[0]),
            "xboost" => Element::XBoost(args[0]),
            "lens" => Element::Lens(args[0]),
            "dist" => Element::Dist(args[0]),
            "mat" => {
                let mut v = [0.0; 8];
                v.copy_from_slice(args);
                Element::Mat(v)
            }
            _ => unreachable!("names are checked before construction"),
        }
    }

    pub fn args(&self) -> Vec<f64> {
        match *self {
            Element::Phase(v)
            | Element::Rot(v)
            | Element::Atten(v)
            | Element::XBoost(v)
            | Element::Lens(v)
            | Element::Dist(v) => vec![v],
            Element::Mat(v) => v.to_vec(),
        }
    }

    /// The SL(2,C) matrix of the element. With `degrees`, the angles of
    /// `phase` and `rot` are converted to radians first.
    pub fn to_sl2c(&self, degrees: bool, tol: &Tolerances) -> Result<Sl2c, OpticsError> {
        let angle = |v: f64| if degrees { v.to_radians() } else { v };
        match *self {
            Element::Phase(v) => phase_shift(angle(v)),
            Element::Rot(v) => rotation(angle(v)),
            Element::Atten(v) => attenuation(v),
            Element::XBoost(v) => x_boost(v),
            Element::Lens(f) => lens(f)?.to_sl2c(tol),
            Element::Dist(z) => translation(z)?.to_sl2c(tol),
            Element::Mat(v) => {
                let [a, b, c, d] = mat_entries(&v);
                // The literal was accepted within MAT_DET_TOL; bring it onto det = 1.
                let root = (a * d - b * c).sqrt();
                Sl2c::new(a / root, b / root, c / root, d / root, tol)
            }
        }
    }
}

fn mat_entries(v: &[f64; 8]) -> [Complex64; 4] {
    [
        Complex64::new(v[0], v[1]),
        Complex64::new(v[2], v[3]),
        Complex64::new(v[4], v[5]),
        Complex64::new(v[6], v[7]),
    ]
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name())?;
        for (i, v) in self.args().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// A parsed, non-empty chain in beam-traversal order.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    elements: Vec<Element>,
}

impl ChainSpec {
    pub fn new(elements: Vec<Element>) -> Result<Self, ChainError> {
        if elements.is_empty() {
            return Err(ChainError::Empty);
        }
        Ok(ChainSpec { elements })
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Canonical text form; parsing it gives back the same chain.
    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn matrices(&self, degrees: bool, tol: &Tolerances) -> Result<Vec<Sl2c>, OpticsError> {
        self.elements
            .iter()
            .map(|e| e.to_sl2c(degrees, tol))
            .collect()
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
}

impl Scanner {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    /// 1-based position of the current character.
    fn position(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn syntax(&self, message: impl Into<String>) -> ChainError {
        ChainError::Syntax {
            position: self.position(),
            message: message.into(),
        }
    }

    fn describe_current(&self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".into(),
        }
    }

    fn number(&mut self) -> Result<f64, ChainError> {
        let position = self.position();
        let literal =
            self.take_while(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'));
        if literal.is_empty() {
            return Err(ChainError::Syntax {
                position,
                message: format!("expected a number, found {}", self.describe_current()),
            });
        }
        let value: f64 = literal.parse().map_err(|_| ChainError::Syntax {
            position,
            message: format!("malformed number '{literal}'"),
        })?;
        if !value.is_finite() {
            return Err(ChainError::NonFinite { position, literal });
        }
        Ok(value)
    }

    fn element(&mut self) -> Result<Element, ChainError> {
        let start = self.position();
        let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if name.is_empty() {
            return Err(self.syntax(format!(
                "expected an element name, found {}",
                self.describe_current()
            )));
        }
        let expected = Element::arity(&name).ok_or_else(|| ChainError::UnknownElement {
            position: start,
            name: name.clone(),
        })?;
        if self.peek() != Some('(') {
            return Err(self.syntax(format!("expected '(', found {}", self.describe_current())));
        }
        self.pos += 1;

        let mut args = Vec::new();
        self.skip_ws();
        if self.peek() != Some(')') {
            loop {
                self.skip_ws();
                args.push(self.number()?);
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => break,
                    _ => {
                        return Err(self.syntax(format!(
                            "expected ',' or ')', found {}",
                            self.describe_current()
                        )))
                    }
                }
            }
        }
        let close = self.position();
        self.pos += 1;

        if args.len() != expected {
            return Err(ChainError::Arity {
                position: close,
                name,
                expected,
                found: args.len(),
            });
        }
        let element = Element::from_parts(&name, &args);
        if let Element::Mat(v) = element {
            let [a, b, c, d] = mat_entries(&v);
            let det = a * d - b * c;
            if (det - 1.0).norm() > MAT_DET_TOL {
                return Err(ChainError::Determinant {
                    position: start,
                    det,
                });
            }
        }
        Ok(element)
    }
}

pub fn parse_chain(text: &str) -> Result<ChainSpec, ChainError> {
    let mut sc = Scanner {
        chars: text.chars().collect(),
        pos: 0,
    };
    sc.skip_ws();
    if sc.peek().is_none() {
        return Err(ChainError::Empty);
    }
    let mut elements = Vec::new();
    loop {
        elements.push(sc.element()?);
        let separated = sc.skip_ws();
        if sc.peek().is_none() {
            break;
        }
        if !separated {
            return Err(sc.syntax("elements must be separated by whitespace"));
        }
    }
    ChainSpec::new(elements)
}
