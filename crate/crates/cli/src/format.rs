//! Text, LaTeX and JSON renderings of word and commutator series.

use std::fmt::Write as _;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use zassenhaus_core::algebra::format_ratio;
use zassenhaus_core::commutator::CommutatorSeries;
use zassenhaus_core::engine::SeriesKind;
use zassenhaus_core::{Alphabet, Rational, Word, WordSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Representation {
    Words,
    Dynkin,
    BaCommutators,
    AbCommutators,
}

impl Representation {
    pub fn name(self) -> &'static str {
        match self {
            Representation::Words => "words",
            Representation::Dynkin => "dynkin",
            Representation::BaCommutators => "ba-commutators",
            Representation::AbCommutators => "ab-commutators",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

/// A series in one of the supported representations.
#[derive(Debug, Clone, PartialEq)]
pub enum Rendered {
    Words(WordSeries),
    Commutators(Representation, CommutatorSeries),
}

impl Rendered {
    pub fn representation(&self) -> Representation {
        match self {
            Rendered::Words(_) => Representation::Words,
            Rendered::Commutators(rep, _) => *rep,
        }
    }

    /// Terms in canonical order. Commutator skeletons are spelled out as
    /// brackets when `nested` is set.
    fn terms(&self, alphabet: Alphabet, nested: bool) -> Vec<(&Rational, String)> {
        match self {
            Rendered::Words(s) => s.iter().map(|(w, c)| (c, w.render(alphabet))).collect(),
            Rendered::Commutators(_, cs) => cs
                .terms()
                .iter()
                .map(|(c, w)| {
                    let body = if nested {
                        left_normed(*w, alphabet)
                    } else {
                        w.render(alphabet)
                    };
                    (c, body)
                })
                .collect(),
        }
    }
}

pub fn alphabet(kind: SeriesKind) -> Alphabet {
    match kind {
        SeriesKind::Zassenhaus => Alphabet::AB,
        SeriesKind::Bch => Alphabet::XY,
    }
}

/// `[[…[s₁,s₂],…],sₙ]` for the skeleton `s₁…sₙ`.
pub fn left_normed(skeleton: Word, alphabet: Alphabet) -> String {
    let mut letters = skeleton.letters().map(|l| alphabet.char(l));
    let Some(first) = letters.next() else {
        return String::new();
    };
    let mut out = first.to_string();
    for c in letters {
        out = format!("[{out},{c}]");
    }
    out
}

/// `-1/2 ab + 1/2 ba`; an empty series prints as `0`.
pub fn to_text(rendered: &Rendered, kind: SeriesKind) -> String {
    let terms = rendered.terms(alphabet(kind), true);
    if terms.is_empty() {
        return "0\n".to_string();
    }
    let mut out = String::new();
    for (i, (c, body)) in terms.iter().enumerate() {
        match (i, c.is_negative()) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        write!(out, "{} {body}", c.abs()).unwrap();
    }
    out.push('\n');
    out
}

fn latex_coefficient(c: &Rational) -> String {
    if c.is_one() {
        String::new()
    } else if c.is_integer() {
        format!("{} ", c.numer())
    } else {
        format!("\\frac{{{}}}{{{}}} ", c.numer(), c.denom())
    }
}

/// A display-math fragment such as `\[ c_{2} = -\frac{1}{2} ab + \frac{1}{2} ba \]`.
pub fn to_latex(rendered: &Rendered, kind: SeriesKind, order: usize) -> String {
    let symbol = match kind {
        SeriesKind::Zassenhaus => 'c',
        SeriesKind::Bch => 'z',
    };
    let mut out = format!("\\[ {symbol}_{{{order}}} = ");
    let terms = rendered.terms(alphabet(kind), true);
    if terms.is_empty() {
        out.push('0');
    }
    for (i, (c, body)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        write!(out, "{}{body}", latex_coefficient(&c.abs())).unwrap();
    }
    out.push_str(" \\]\n");
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProvenanceDoc {
    pub engine_version: String,
    pub compute_seconds: f64,
}

/// The JSON document shared by `compute --format json` and the cache files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDocument {
    pub kind: String,
    pub order: usize,
    pub representation: String,
    pub terms: Vec<JsonTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<ProvenanceDoc>,
}

impl SeriesDocument {
    pub fn new(rendered: &Rendered, kind: SeriesKind, order: usize) -> Self {
        SeriesDocument {
            kind: kind.name().to_string(),
            order,
            representation: rendered.representation().name().to_string(),
            terms: rendered
                .terms(alphabet(kind), false)
                .into_iter()
                .map(|(c, word)| JsonTerm {
                    coeff: format_ratio(c),
                    word,
                })
                .collect(),
            provenance: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}

pub fn to_json(rendered: &Rendered, kind: SeriesKind, order: usize) -> String {
    SeriesDocument::new(rendered, kind, order).to_json()
}

pub fn render(rendered: &Rendered, kind: SeriesKind, order: usize, format: Format) -> String {
    match format {
        Format::Text => to_text(rendered, kind),
        Format::Latex => to_latex(rendered, kind, order),
        Format::Json => to_json(rendered, kind, order),
    }
}
