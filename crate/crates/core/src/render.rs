//! Text, LaTeX and JSON renderings, plus JSON re-ingestion.
//!
//! Text output re-parses to the same element (see [`crate::expr`]); JSON output
//! round-trips exactly for every element type.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chargroup::{GroupElement, Word};
use crate::error::{Error, Result};
use crate::expr;
use crate::freealg::{GroupWord, SkewElement};
use crate::g2::VerificationReport;
use crate::hopf::{BraidedTensor, TensorElement};
use crate::linear::Linear;
use crate::scalar::Scalar;
use crate::shuffle::ShuffleElement;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            _ => Err(Error::Eval(format!("unknown format {s:?} (expected text, latex or json)"))),
        }
    }
}

fn join_text<'a, B: 'a>(
    terms: impl IntoIterator<Item = (&'a B, &'a Scalar)>,
    basis: impl Fn(&B) -> Option<String>,
) -> String {
    let mut s = String::new();
    for (idx, (b, c)) in terms.into_iter().enumerate() {
        let (neg, mag) = if c.is_negative_term() { (true, -c) } else { (false, c.clone()) };
        match (idx, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let coef = if mag.needs_parens() { format!("({mag})") } else { mag.to_string() };
        match basis(b) {
            None => s.push_str(&coef),
            Some(t) if mag.is_one() => s.push_str(&t),
            Some(t) => {
                let _ = write!(s, "{coef}*{t}");
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn join_latex<'a, B: 'a>(
    terms: impl IntoIterator<Item = (&'a B, &'a Scalar)>,
    basis: impl Fn(&B) -> Option<String>,
) -> String {
    let mut s = String::new();
    for (idx, (b, c)) in terms.into_iter().enumerate() {
        let (neg, mag) = if c.is_negative_term() { (true, -c) } else { (false, c.clone()) };
        if neg {
            s.push('-');
        } else if idx > 0 {
            s.push('+');
        }
        let coef = if mag.needs_parens() {
            format!("\\left({}\\right)", mag.latex())
        } else {
            mag.latex()
        };
        match basis(b) {
            None => s.push_str(&coef),
            Some(t) if mag.is_one() => s.push_str(&t),
            Some(t) => s.push_str(&format!("{coef}\\,{t}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Tensor terms with the heaviest first leg first, so `u (x) 1` leads as in the usual displays.
fn tensor_order<L: Ord + Clone, R: Ord + Clone>(
    t: &Linear<(L, R)>,
    weight: impl Fn(&L) -> usize,
) -> Vec<(&(L, R), &Scalar)> {
    let mut terms: Vec<_> = t.iter().collect();
    terms.sort_by_key(|((l, _), _)| std::cmp::Reverse(weight(l)));
    terms
}

fn group_word_text(gw: &GroupWord) -> Option<String> {
    if gw.group.is_identity() && gw.word.is_empty() {
        None
    } else {
        Some(gw.to_string())
    }
}

fn group_word_latex(gw: &GroupWord) -> String {
    match (gw.group.is_identity(), gw.word.is_empty()) {
        (true, true) => "1".into(),
        (true, false) => gw.word.latex(),
        (false, true) => gw.group.latex(),
        (false, false) => format!("{}{}", gw.group.latex(), gw.word.latex()),
    }
}

fn comonomial_text(w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        format!("({w})")
    }
}

fn comonomial_latex(w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        format!("({})", w.latex())
    }
}

pub fn skew_text(a: &SkewElement) -> String {
    join_text(a, group_word_text)
}

pub fn skew_latex(a: &SkewElement) -> String {
    join_latex(a, |gw| {
        if gw.group.is_identity() && gw.word.is_empty() {
            None
        } else {
            Some(group_word_latex(gw))
        }
    })
}

pub fn tensor_text(t: &TensorElement) -> String {
    join_text(tensor_order(t, |l| l.word.len()), |(l, r)| Some(format!("{l} (x) {r}")))
}

pub fn tensor_latex(t: &TensorElement) -> String {
    join_latex(tensor_order(t, |l| l.word.len()), |(l, r)| {
        Some(format!("{}\\otimes {}", group_word_latex(l), group_word_latex(r)))
    })
}

pub fn braided_text(t: &BraidedTensor) -> String {
    join_text(tensor_order(t, Word::len), |(l, r)| {
        Some(format!("{} (x) {}", comonomial_text(l), comonomial_text(r)))
    })
}

pub fn braided_latex(t: &BraidedTensor) -> String {
    join_latex(tensor_order(t, Word::len), |(l, r)| {
        Some(format!("{}\\otimes {}", comonomial_latex(l), comonomial_latex(r)))
    })
}

pub fn shuffle_text(a: &ShuffleElement) -> String {
    join_text(a.as_linear(), |w| if w.is_empty() { None } else { Some(comonomial_text(w)) })
}

pub fn shuffle_latex(a: &ShuffleElement) -> String {
    join_latex(a.as_linear(), |w| if w.is_empty() { None } else { Some(comonomial_latex(w)) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonCoeff {
    pub num: String,
    pub den: String,
}

impl JsonCoeff {
    pub fn from_scalar(c: &Scalar) -> Self {
        let mut den = String::new();
        for (idx, (f, k)) in c.denominator_factors().enumerate() {
            if idx > 0 {
                den.push('*');
            }
            let _ = write!(den, "({f})");
            if k > 1 {
                let _ = write!(den, "^{k}");
            }
        }
        if den.is_empty() {
            den.push('1');
        }
        JsonCoeff {
            num: c.numerator().to_string(),
            den,
        }
    }

    pub fn to_scalar(&self) -> Result<Scalar> {
        let num = expr::parse_scalar(&self.num)?;
        let den = expr::parse_scalar(&self.den)?;
        num.checked_div(&den)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SkewTerm {
    coeff: JsonCoeff,
    group: Vec<i32>,
    word: Vec<u8>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct TensorTerm {
    coeff: JsonCoeff,
    left_group: Vec<i32>,
    left_word: Vec<u8>,
    right_group: Vec<i32>,
    right_word: Vec<u8>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct BraidedTerm {
    coeff: JsonCoeff,
    left: Vec<u8>,
    right: Vec<u8>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ShuffleTerm {
    coeff: JsonCoeff,
    word: Vec<u8>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Terms<T> {
    kind: String,
    terms: Vec<T>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteJson {
    pub status: crate::g2::Status,
    pub reports: Vec<VerificationReport>,
}

fn to_json<T: Serialize>(kind: &str, terms: Vec<T>) -> String {
    serde_json::to_string_pretty(&Terms {
        kind: kind.into(),
        terms,
    })
    .expect("serializable")
}

fn from_json<T: for<'de> Deserialize<'de>>(kind: &str, s: &str) -> Result<Vec<T>> {
    let t: Terms<T> = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
    if t.kind != kind {
        return Err(Error::Json(format!("expected kind {kind:?}, found {:?}", t.kind)));
    }
    Ok(t.terms)
}

fn word_of(letters: Vec<u8>) -> Result<Word> {
    if letters.contains(&0) {
        return Err(Error::Json("letters are 1-based".into()));
    }
    Ok(Word::from_letters(letters.into_iter().map(usize::from)))
}

pub fn skew_json(a: &SkewElement) -> String {
    let terms = a
        .iter()
        .map(|(gw, c)| SkewTerm {
            coeff: JsonCoeff::from_scalar(c),
            group: gw.group.exponents().to_vec(),
            word: gw.word.as_bytes().to_vec(),
        })
        .collect();
    to_json("skew", terms)
}

pub fn skew_from_json(s: &str) -> Result<SkewElement> {
    let mut out = SkewElement::zero();
    for t in from_json::<SkewTerm>("skew", s)? {
        let gw = GroupWord::new(GroupElement::from_exponents(t.group), word_of(t.word)?);
        out.add_term(gw, t.coeff.to_scalar()?);
    }
    Ok(out)
}

pub fn tensor_json(a: &TensorElement) -> String {
    let terms = a
        .iter()
        .map(|((l, r), c)| TensorTerm {
            coeff: JsonCoeff::from_scalar(c),
            left_group: l.group.exponents().to_vec(),
            left_word: l.word.as_bytes().to_vec(),
            right_group: r.group.exponents().to_vec(),
            right_word: r.word.as_bytes().to_vec(),
        })
        .collect();
    to_json("tensor", terms)
}

pub fn tensor_from_json(s: &str) -> Result<TensorElement> {
    let mut out = TensorElement::zero();
    for t in from_json::<TensorTerm>("tensor", s)? {
        let l = GroupWord::new(GroupElement::from_exponents(t.left_group), word_of(t.left_word)?);
        let r = GroupWord::new(GroupElement::from_exponents(t.right_group), word_of(t.right_word)?);
        out.add_term((l, r), t.coeff.to_scalar()?);
    }
    Ok(out)
}

pub fn braided_json(a: &BraidedTensor) -> String {
    let terms = a
        .iter()
        .map(|((l, r), c)| BraidedTerm {
            coeff: JsonCoeff::from_scalar(c),
            left: l.as_bytes().to_vec(),
            right: r.as_bytes().to_vec(),
        })
        .collect();
    to_json("braided", terms)
}

pub fn braided_from_json(s: &str) -> Result<BraidedTensor> {
    let mut out = BraidedTensor::zero();
    for t in from_json::<BraidedTerm>("braided", s)? {
        out.add_term((word_of(t.left)?, word_of(t.right)?), t.coeff.to_scalar()?);
    }
    Ok(out)
}

pub fn shuffle_json(a: &ShuffleElement) -> String {
    let terms = a
        .iter()
        .map(|(w, c)| ShuffleTerm {
            coeff: JsonCoeff::from_scalar(c),
            word: w.as_bytes().to_vec(),
        })
        .collect();
    to_json("shuffle", terms)
}

pub fn shuffle_from_json(s: &str) -> Result<ShuffleElement> {
    let mut out = Linear::zero();
    for t in from_json::<ShuffleTerm>("shuffle", s)? {
        out.add_term(word_of(t.word)?, t.coeff.to_scalar()?);
    }
    Ok(ShuffleElement::from_linear(out))
}

/// Values the renderers know how to print.
pub enum Renderable<'a> {
    Skew(&'a SkewElement),
    Tensor(&'a TensorElement),
    Braided(&'a BraidedTensor),
    Shuffle(&'a ShuffleElement),
    Reports(&'a [VerificationReport]),
}

pub fn render(value: Renderable<'_>, format: Format) -> String {
    use Renderable::*;
    match (value, format) {
        (Skew(a), Format::Text) => skew_text(a),
        (Skew(a), Format::Latex) => skew_latex(a),
        (Skew(a), Format::Json) => skew_json(a),
        (Tensor(a), Format::Text) => tensor_text(a),
        (Tensor(a), Format::Latex) => tensor_latex(a),
        (Tensor(a), Format::Json) => tensor_json(a),
        (Braided(a), Format::Text) => braided_text(a),
        (Braided(a), Format::Latex) => braided_latex(a),
        (Braided(a), Format::Json) => braided_json(a),
        (Shuffle(a), Format::Text) => shuffle_text(a),
        (Shuffle(a), Format::Latex) => shuffle_latex(a),
        (Shuffle(a), Format::Json) => shuffle_json(a),
        (Reports(r), Format::Json) => {
            let status = if r.iter().all(|x| x.passed()) {
                crate::g2::Status::Pass
            } else {
                crate::g2::Status::Fail
            };
            serde_json::to_string_pretty(&SuiteJson {
                status,
                reports: r.to_vec(),
            })
            .expect("serializable")
        }
        (Reports(r), _) => {
            let mut s = String::new();
            for rep in r {
                let _ = writeln!(s, "{rep}");
            }
            let failed = r.iter().filter(|x| !x.passed()).count();
            let _ = write!(s, "{} identities, {failed} failed", r.len());
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{lift, Engine};

    #[test]
    fn generator_coproduct_renderings() {
        let e = Engine::free(2);
        let d = e.coproduct_free(&e.x(1).unwrap());
        assert_eq!(tensor_text(&d), "x1 (x) 1 + g1 (x) x1");
        assert_eq!(tensor_latex(&d), "x_1\\otimes 1+g_1\\otimes x_1");
    }

    #[test]
    fn zero_renders_as_zero() {
        assert_eq!(tensor_text(&TensorElement::zero()), "0");
        assert_eq!(skew_latex(&SkewElement::zero()), "0");
        assert_eq!(shuffle_text(&ShuffleElement::zero()), "0");
        let j: serde_json::Value = serde_json::from_str(&skew_json(&SkewElement::zero())).unwrap();
        assert_eq!(j["terms"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn serre_text() {
        let e = Engine::free(2);
        let b = lift(&e.serre_left(1, 2, 1).unwrap());
        assert_eq!(skew_text(&b), "x1x2 - p12*x2x1");
    }

    #[test]
    fn json_round_trips() {
        let e = Engine::free(2);
        let b = lift(&e.braced_left(1, 2, 2).unwrap());
        assert_eq!(skew_from_json(&skew_json(&b)).unwrap(), b);
        let d = e.coproduct(&b);
        assert_eq!(tensor_from_json(&tensor_json(&d)).unwrap(), d);
        let br = e.braided_from_ordinary(&e.braced_left(1, 2, 2).unwrap()).unwrap();
        assert_eq!(braided_from_json(&braided_json(&br)).unwrap(), br);
        let s = e.omega(&e.serre_left(1, 2, 2).unwrap());
        assert_eq!(shuffle_from_json(&shuffle_json(&s)).unwrap(), s);
    }

    #[test]
    fn json_kind_is_checked() {
        let e = Engine::free(2);
        let s = skew_json(&e.g(1).unwrap());
        assert!(matches!(tensor_from_json(&s), Err(Error::Json(_))));
    }
}
