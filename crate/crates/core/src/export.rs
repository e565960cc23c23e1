//! Serialization of factorizations: the versioned machine-readable document, plus
//! plain-text and LaTeX renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::disentangler::{Convention, Factor, Factorization, Variant};
use crate::error::{Error, Result};
use crate::qfield::{QPoly, QRat};
use crate::wordalg::{NCPoly, Word};

pub const FORMAT_VERSION: u32 = 1;

/// One term of an exponent: a word over `{A, B}` and its coefficient as two
/// canonical polynomial strings.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermRecord {
    pub word: String,
    pub num: String,
    pub den: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FactorRecord {
    pub grade: usize,
    pub base_exponent: i64,
    pub exponent: Vec<TermRecord>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    pub derived_at_unix: u64,
    #[serde(default)]
    pub config: BTreeMap<String, String>,
}

impl Provenance {
    pub fn now(config: BTreeMap<String, String>) -> Self {
        Provenance {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            derived_at_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            config,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExportDocument {
    #[serde(rename = "qzx-format-version")]
    pub format_version: u32,
    pub variant: Variant,
    pub convention: Convention,
    pub order: usize,
    pub factors: Vec<FactorRecord>,
    pub provenance: Provenance,
}

pub fn poly_terms(p: &NCPoly) -> Vec<TermRecord> {
    p.iter()
        .map(|(w, c)| TermRecord {
            word: w.to_string(),
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        })
        .collect()
}

pub fn parse_terms(terms: &[TermRecord]) -> Result<NCPoly> {
    let mut p = NCPoly::zero();
    for t in terms {
        let w: Word = t.word.parse()?;
        let bad = |s: &str| Error::Parse(format!("invalid polynomial `{s}`"));
        let num = QPoly::parse(&t.num).ok_or_else(|| bad(&t.num))?;
        let den = QPoly::parse(&t.den).ok_or_else(|| bad(&t.den))?;
        p.add_term(w, QRat::new(num, den)?);
    }
    Ok(p)
}

impl ExportDocument {
    pub fn from_factorization(f: &Factorization, provenance: Provenance) -> Self {
        ExportDocument {
            format_version: FORMAT_VERSION,
            variant: f.variant,
            convention: f.convention,
            order: f.order,
            factors: f
                .factors
                .iter()
                .map(|fac| FactorRecord {
                    grade: fac.grade,
                    base_exponent: fac.base_exponent,
                    exponent: poly_terms(&fac.exponent),
                })
                .collect(),
            provenance,
        }
    }

    pub fn to_factorization(&self) -> Result<Factorization> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported qzx-format-version {} (expected {FORMAT_VERSION})",
                self.format_version
            )));
        }
        let factors = self
            .factors
            .iter()
            .map(|r| {
                Ok(Factor {
                    grade: r.grade,
                    base_exponent: r.base_exponent,
                    exponent: parse_terms(&r.exponent)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Factorization {
            variant: self.variant,
            convention: self.convention,
            order: self.order,
            factors,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Exponential head for a factor in a convention, e.g. `e_{q^2}^` or `E_q`.
fn text_head(convention: Convention, m: i64) -> String {
    let base = match m {
        1 => "q".to_string(),
        m => format!("{{q^{m}}}"),
    };
    match convention {
        Convention::Jackson => format!("e_{base}^"),
        Convention::LowerE => format!("e_{base}"),
        Convention::UpperE => format!("E_{base}"),
        Convention::Classical => "exp".to_string(),
    }
}

/// Line-oriented plain-text rendering.
pub fn render_text(f: &Factorization) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "variant: {}  convention: {}  order: {}", f.variant, f.convention, f.order);
    match f.variant {
        Variant::Qbch => {
            let head = text_head(f.convention, if f.convention == Convention::Classical { 0 } else { 1 });
            let _ = writeln!(out, "{head}(xA) {head}(xB) = {head}(S(x)),  S(x) = x(A+B) + sum x^n Z_n");
            for fac in &f.factors {
                let _ = writeln!(out, "Z_{} = {}", fac.grade, fac.exponent.pretty());
            }
        }
        _ => {
            let head = text_head(f.convention, if f.convention == Convention::Classical { 0 } else { 1 });
            let _ = writeln!(out, "{head}(x(A+B)) = {head}(xA) {head}(xB) prod_n exp_n(x^n C_n)");
            for fac in &f.factors {
                let _ = writeln!(
                    out,
                    "grade {}: {}(x^{} C_{}),  C_{} = {}",
                    fac.grade,
                    text_head(f.convention, fac.base_exponent),
                    fac.grade,
                    fac.grade,
                    fac.grade,
                    fac.exponent.pretty()
                );
            }
        }
    }
    out
}

fn latex_qpoly(p: &QPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().iter().enumerate() {
        let mag = c.magnitude().to_string();
        if c.sign() == num_bigint::Sign::Minus {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        match *e {
            0 => out.push_str(&mag),
            _ => {
                if mag != "1" {
                    out.push_str(&mag);
                }
                out.push('q');
                if *e > 1 {
                    let _ = write!(out, "^{{{e}}}");
                }
            }
        }
    }
    out
}

fn latex_coeff(c: &QRat) -> (bool, String) {
    let neg_num = c.numer().terms().len() == 1 && c.numer().leading_coeff().is_some_and(|x| x.sign() == num_bigint::Sign::Minus);
    let (sign, num) = if neg_num {
        (true, c.numer().neg())
    } else {
        (false, c.numer().clone())
    };
    let body = if c.denom().is_one() {
        if num.terms().len() > 1 {
            format!("\\left({}\\right)", latex_qpoly(&num))
        } else if num.is_one() {
            String::new()
        } else {
            latex_qpoly(&num)
        }
    } else {
        format!("\\frac{{{}}}{{{}}}", latex_qpoly(&num), latex_qpoly(c.denom()))
    };
    (sign, body)
}

fn latex_word(w: &Word) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < w.len() {
        let l = w.get(i);
        let run = w.letters().skip(i).take_while(|x| *x == l).count();
        out.push(l.as_char());
        if run > 1 {
            let _ = write!(out, "^{{{run}}}");
        }
        i += run;
    }
    out
}

/// LaTeX for an expanded exponent, terms in graded lexicographic order.
pub fn latex_poly(p: &NCPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, c)) in p.iter().enumerate() {
        let (neg, body) = latex_coeff(c);
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        out.push_str(&body);
        if w.is_empty() && body.is_empty() {
            out.push('1');
        } else if !w.is_empty() {
            out.push_str(&latex_word(w));
        }
    }
    out
}

fn latex_exp(convention: Convention, m: i64, arg: &str) -> String {
    let base = if m == 1 { "q".to_string() } else { format!("q^{{{m}}}") };
    match convention {
        Convention::Jackson => format!("e_{{{base}}}^{{{arg}}}"),
        Convention::LowerE => format!("e_{{{base}}}\\left({arg}\\right)"),
        Convention::UpperE => format!("E_{{{base}}}\\left({arg}\\right)"),
        Convention::Classical => format!("e^{{{arg}}}"),
    }
}

/// LaTeX equation for the factorization with expanded exponents.
pub fn render_latex(f: &Factorization) -> String {
    let m1 = if f.convention == Convention::Classical { 0 } else { 1 };
    let grade_arg = |g: usize, p: &NCPoly| {
        let xg = if g == 1 { "x".to_string() } else { format!("x^{{{g}}}") };
        format!("{xg}\\left({}\\right)", latex_poly(p))
    };
    let mut out = String::new();
    match f.variant {
        Variant::Qbch => {
            let mut exponent = "x(A+B)".to_string();
            for fac in &f.factors {
                let _ = write!(exponent, "+{}", grade_arg(fac.grade, &fac.exponent));
            }
            let _ = write!(
                out,
                "{}{} = {}+\\cdots",
                latex_exp(f.convention, m1, "xA"),
                latex_exp(f.convention, m1, "xB"),
                latex_exp(f.convention, m1, &exponent)
            );
        }
        _ => {
            let _ = write!(
                out,
                "{} = {}{}",
                latex_exp(f.convention, m1, "x(A+B)"),
                latex_exp(f.convention, m1, "xA"),
                latex_exp(f.convention, m1, "xB")
            );
            for fac in &f.factors {
                out.push_str(" \\, ");
                out.push_str(&latex_exp(f.convention, fac.base_exponent, &grade_arg(fac.grade, &fac.exponent)));
            }
            out.push_str("\\cdots");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disentangler::derive;

    #[test]
    fn json_round_trip() {
        let f = derive(Variant::Escalating, 4).unwrap();
        let doc = ExportDocument::from_factorization(&f, Provenance::now(BTreeMap::new()));
        let text = doc.to_json();
        assert!(text.contains("\"qzx-format-version\": 1"));
        let back = ExportDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_factorization().unwrap(), f);
    }

    #[test]
    fn rejects_unknown_version() {
        let f = derive(Variant::Uniform, 2).unwrap();
        let mut doc = ExportDocument::from_factorization(&f, Provenance::default());
        doc.format_version = 2;
        assert!(doc.to_factorization().is_err());
    }

    #[test]
    fn grade_two_text_and_latex() {
        let f = derive(Variant::Escalating, 2).unwrap();
        let text = render_text(&f);
        assert!(text.contains("C_2 = (-q/(1+q))*AB + (1/(1+q))*BA"), "{text}");
        let tex = render_latex(&f);
        assert!(tex.contains("e_{q^{2}}^{x^{2}\\left(-\\frac{q}{1+q}AB+\\frac{1}{1+q}BA\\right)}"), "{tex}");
    }

    #[test]
    fn latex_words_and_polys() {
        assert_eq!(latex_word(&"AAB".parse().unwrap()), "A^{2}B");
        assert_eq!(latex_word(&"BAAA".parse().unwrap()), "BA^{3}");
        assert_eq!(latex_word(&"AABBA".parse().unwrap()), "A^{2}B^{2}A");
        assert_eq!(latex_qpoly(&QPoly::parse("1+2*q+q^12").unwrap()), "1+2q+q^{12}");
    }
}
