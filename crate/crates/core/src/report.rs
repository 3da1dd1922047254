//! Structured experiment and verification reports.
//!
//! A report is a flat, deterministic record: command, input digests, seed,
//! named exact metrics, verdict, and an optional selection witness. Two
//! runs with identical inputs and seed serialize byte-identically, which
//! is what the reproducibility checks hash.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::select::TranslateWitness;

/// Exact metric value: integers and rationals only, never floats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricValue {
    Int(BigInt),
    Rat(BigRational),
    Text(String),
}

impl MetricValue {
    pub fn from_usize(v: usize) -> Self {
        MetricValue::Int(BigInt::from(v))
    }

    pub fn from_i64(v: i64) -> Self {
        MetricValue::Int(BigInt::from(v))
    }

    /// Fixed-point decimal rendering with `digits` places, truncated
    /// toward zero. Only used behind an explicit flag; the canonical
    /// serialization is exact.
    pub fn decimal(&self, digits: u32) -> String {
        match self {
            MetricValue::Int(v) => v.to_string(),
            MetricValue::Text(s) => s.clone(),
            MetricValue::Rat(r) => {
                let scale = BigInt::from(10u32).pow(digits);
                let scaled = (r * BigRational::from_integer(scale.clone())).trunc();
                let scaled = scaled.to_integer();
                let neg = scaled.is_negative();
                let abs = scaled.magnitude().to_string();
                let pad = digits as usize + 1;
                let abs = format!("{abs:0>pad$}");
                let (int_part, frac_part) = abs.split_at(abs.len() - digits as usize);
                format!("{}{int_part}.{frac_part}", if neg { "-" } else { "" })
            }
        }
    }
}

impl fmt::Display for MetricValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricValue::Int(v) => write!(f, "{v}"),
            // `Ratio` prints `num/den`, or just `num` when the
            // denominator is one.
            MetricValue::Rat(r) => write!(f, "{r}"),
            MetricValue::Text(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Vacuous => "vacuous",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    /// Labeled input identifiers, typically `path:sha256` or parameter
    /// strings. Order is the order of insertion.
    pub inputs: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub metrics: Vec<(String, MetricValue)>,
    pub verdict: Verdict,
    pub witness: Option<TranslateWitness>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs: Vec::new(),
            seed: None,
            metrics: Vec::new(),
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    pub fn input(mut self, label: impl Into<String>, value: impl Into<String>) -> Self {
        self.inputs.push((label.into(), value.into()));
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn metric(mut self, name: impl Into<String>, value: MetricValue) -> Self {
        self.metrics.push((name.into(), value));
        self
    }

    pub fn metric_usize(self, name: impl Into<String>, v: usize) -> Self {
        self.metric(name, MetricValue::from_usize(v))
    }

    pub fn metric_i64(self, name: impl Into<String>, v: i64) -> Self {
        self.metric(name, MetricValue::from_i64(v))
    }

    pub fn metric_int(self, name: impl Into<String>, v: BigInt) -> Self {
        self.metric(name, MetricValue::Int(v))
    }

    pub fn metric_rat(self, name: impl Into<String>, v: BigRational) -> Self {
        self.metric(name, MetricValue::Rat(v))
    }

    pub fn metric_text(self, name: impl Into<String>, v: impl Into<String>) -> Self {
        self.metric(name, MetricValue::Text(v.into()))
    }

    pub fn verdict(mut self, v: Verdict) -> Self {
        self.verdict = v;
        self
    }

    pub fn witness(mut self, w: TranslateWitness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn passed(&self) -> bool {
        !matches!(self.verdict, Verdict::Fail)
    }

    /// Line-oriented `key<TAB>value` serialization.
    pub fn records(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command\t{}\n", self.command));
        for (label, value) in &self.inputs {
            out.push_str(&format!("input.{label}\t{value}\n"));
        }
        match self.seed {
            Some(s) => out.push_str(&format!("seed\t{s}\n")),
            None => out.push_str("seed\tnone\n"),
        }
        for (name, value) in &self.metrics {
            out.push_str(&format!("{name}\t{value}\n"));
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness\t{w}\n"));
        }
        out.push_str(&format!("verdict\t{}\n", self.verdict));
        out
    }

    /// Single-line JSON object with every value rendered as a string, so
    /// exact rationals survive round trips.
    pub fn json_line(&self) -> String {
        let mut s = String::from("{");
        s.push_str(&format!("\"command\":{}", json_str(&self.command)));
        s.push_str(",\"inputs\":{");
        for (i, (label, value)) in self.inputs.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format!("{}:{}", json_str(label), json_str(value)));
        }
        s.push('}');
        match self.seed {
            Some(seed) => s.push_str(&format!(",\"seed\":{seed}")),
            None => s.push_str(",\"seed\":null"),
        }
        s.push_str(",\"metrics\":{");
        for (i, (name, value)) in self.metrics.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format!("{}:{}", json_str(name), json_str(&value.to_string())));
        }
        s.push('}');
        if let Some(w) = &self.witness {
            s.push_str(&format!(",\"witness\":{}", json_str(&w.to_string())));
        }
        s.push_str(&format!(",\"verdict\":\"{}\"", self.verdict));
        s.push('}');
        s
    }
}

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn records_are_stable() {
        let r = Report::new("verify")
            .input("a", "file.pts:abcd")
            .seed(7)
            .metric_usize("lhs", 15)
            .metric_rat(
                "bound",
                BigRational::new(BigInt::from(2), BigInt::from(3)),
            )
            .verdict(Verdict::Pass);
        let text = r.records();
        assert_eq!(
            text,
            "command\tverify\ninput.a\tfile.pts:abcd\nseed\t7\nlhs\t15\nbound\t2/3\nverdict\tpass\n"
        );
        assert_eq!(text, r.records());
    }

    #[test]
    fn decimal_rendering_truncates() {
        let third = MetricValue::Rat(BigRational::new(BigInt::from(1), BigInt::from(3)));
        assert_eq!(third.decimal(4), "0.3333");
        let neg = MetricValue::Rat(BigRational::new(BigInt::from(-5), BigInt::from(4)));
        assert_eq!(neg.decimal(2), "-1.25");
        let one = MetricValue::Rat(BigRational::one());
        assert_eq!(one.decimal(3), "1.000");
    }

    #[test]
    fn json_escapes() {
        let r = Report::new("x\"y").verdict(Verdict::Vacuous);
        assert!(r.json_line().contains("\"command\":\"x\\\"y\""));
        assert!(r.json_line().ends_with("\"verdict\":\"vacuous\"}"));
    }
}
