//! Command-line front-end for the `fcmon` binary.
//!
//! Subcommands: `classify`, `enumerate`, `structure`,
//! `verify-decomposition`, and `table`. Parameters are given either as
//! `key=value` tokens (`n=2 a=1/6 b=5/6 c=1/3,1/2`) or as a single
//! JSON object. Exit codes: 0 ok, 1 input error, 2 undecided under the
//! cap, 3 mismatch against expected values.

use clap::error::ErrorKind;
use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classifier::{self, Verdict};
use crate::cyclotomic::{rat, Rational};
use crate::decomposition::{mk_subgroup, verify_red1, verify_red2};
use crate::error::{Error, Result};
use crate::groupkit::DEFAULT_CAP;
use crate::monodromy::{params_create, ParamSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "fcmon",
    about = "Exact monodromy groups of Lauricella's F_C system: \
             construction, finiteness classification, enumeration, and \
             structure reports",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Element cap for group enumerations.
    #[arg(long, global = true, env = "MONODROMY_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (reserved; computations currently run on one).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide irreducibility and finiteness of Mon(alpha, beta, gamma).
    Classify {
        /// Parameters: n=.. a=.. b=.. c=..,.. or one JSON object.
        #[arg(required = true)]
        params: Vec<String>,
    },
    /// Enumerate Mon and its reflection subgroup exactly.
    Enumerate {
        #[arg(required = true)]
        params: Vec<String>,
    },
    /// Classify a finite irreducible group (n >= 3) into Types 1-4.
    Structure {
        #[arg(required = true)]
        params: Vec<String>,
        /// Cross-check the predicted intersection by enumeration.
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        verify: bool,
    },
    /// Verify the invariant-subspace decomposition lemmas
    /// (pass lemma=red1 or lemma=red2 among the parameters).
    VerifyDecomposition {
        #[arg(required = true)]
        params: Vec<String>,
    },
    /// Reproduce the two cardinality tables (f4-check-1, f4-check-2).
    Table {
        which: String,
        /// Run both choices of the sign of alpha per row.
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        both_signs: bool,
    },
}

/// Entry point: parse argv, dispatch, return the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Classify { params } => {
            let (p, _) = parse_params(params)?;
            cmd_classify(&p, cli.cap, cli.format)
        }
        Command::Enumerate { params } => {
            let (p, _) = parse_params(params)?;
            cmd_enumerate(&p, cli.cap, cli.format)
        }
        Command::Structure { params, verify } => {
            let (p, _) = parse_params(params)?;
            cmd_structure(&p, cli.cap, *verify, cli.format)
        }
        Command::VerifyDecomposition { params } => {
            let (p, extras) = parse_params(params)?;
            let lemma = extras
                .iter()
                .find(|(k, _)| k == "lemma")
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| Error::Parse("missing lemma=red1|red2".into()))?;
            cmd_verify_decomposition(&p, lemma, cli.cap, cli.format)
        }
        Command::Table { which, both_signs } => {
            cmd_table(which, cli.cap, *both_signs, cli.format)
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.parse::<Rational>()
        .map_err(|_| Error::Parse(format!("not a rational number: `{s}`")))
}

/// Parse `key=value` tokens or a single JSON object into a parameter
/// set; unknown keys are returned for command-specific use.
pub fn parse_params(tokens: &[String]) -> Result<(ParamSet, Vec<(String, String)>)> {
    if tokens.len() == 1 && tokens[0].trim_start().starts_with('{') {
        return parse_params_json(&tokens[0]);
    }
    let mut n: Option<usize> = None;
    let mut a: Option<Rational> = None;
    let mut b: Option<Rational> = None;
    let mut c: Option<Vec<Rational>> = None;
    let mut extras = Vec::new();
    for tok in tokens {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got `{tok}`")))?;
        match key {
            "n" => {
                n = Some(value.parse().map_err(|_| {
                    Error::Parse(format!("not a positive integer: `{tok}`"))
                })?)
            }
            "a" => a = Some(parse_rational(value)?),
            "b" => b = Some(parse_rational(value)?),
            "c" => {
                c = Some(
                    value
                        .split(',')
                        .map(parse_rational)
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            _ => extras.push((key.to_string(), value.to_string())),
        }
    }
    let n = n.ok_or_else(|| Error::Parse("missing n=...".into()))?;
    let a = a.ok_or_else(|| Error::Parse("missing a=...".into()))?;
    let b = b.ok_or_else(|| Error::Parse("missing b=...".into()))?;
    let c = c.ok_or_else(|| Error::Parse("missing c=...".into()))?;
    if n == 0 || c.len() != n {
        return Err(Error::Parse(format!(
            "c has {} entries but n={n}",
            c.len()
        )));
    }
    Ok((params_create(n, a, b, c), extras))
}

fn parse_params_json(s: &str) -> Result<(ParamSet, Vec<(String, String)>)> {
    let v: serde_json::Value =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("JSON parameters must be an object".into()))?;
    let rational_of = |v: &serde_json::Value, key: &str| -> Result<Rational> {
        match v {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(x) if x.is_i64() => Ok(rat(x.as_i64().unwrap(), 1)),
            _ => Err(Error::Parse(format!("field `{key}` must be a rational"))),
        }
    };
    let n = obj
        .get("n")
        .and_then(|x| x.as_u64())
        .ok_or_else(|| Error::Parse("missing integer field `n`".into()))? as usize;
    let a = rational_of(
        obj.get("a")
            .ok_or_else(|| Error::Parse("missing field `a`".into()))?,
        "a",
    )?;
    let b = rational_of(
        obj.get("b")
            .ok_or_else(|| Error::Parse("missing field `b`".into()))?,
        "b",
    )?;
    let c = obj
        .get("c")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::Parse("missing array field `c`".into()))?
        .iter()
        .map(|x| rational_of(x, "c"))
        .collect::<Result<Vec<_>>>()?;
    if n == 0 || c.len() != n {
        return Err(Error::Parse(format!("c has {} entries but n={n}", c.len())));
    }
    let extras = obj
        .iter()
        .filter(|(k, _)| !matches!(k.as_str(), "n" | "a" | "b" | "c"))
        .map(|(k, v)| (k.clone(), v.as_str().unwrap_or_default().to_string()))
        .collect();
    Ok((params_create(n, a, b, c), extras))
}

fn emit<T: Serialize>(value: &T, format: Format, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
        Format::Text => println!("{text}"),
    }
}

fn cmd_classify(p: &ParamSet, cap: usize, format: Format) -> Result<i32> {
    let report = classifier::classify(p, cap)?;
    let mut text = format!(
        "n = {}\nirreducible: {}\nfinite: {:?}\ncondition A per k: {:?}",
        report.n, report.irreducible, report.finite, report.condition_a
    );
    if let Some(cb) = &report.condition_b {
        text.push_str(&format!(
            "\ncondition B: {} (minus ones: {})",
            cb.holds,
            cb.minus_ones.join(", ")
        ));
    }
    if let Some(k) = report.kato {
        text.push_str(&format!("\ncondition B': {k}"));
    }
    if let Some(tag) = &report.case_tag {
        text.push_str(&format!(
            "\ncase: {} (permutation {:?})",
            tag.tag, tag.permutation
        ));
    }
    if let Some(t) = report.structure_type {
        text.push_str(&format!(
            "\ntype: {t}, intersection: {}",
            report.intersection.as_deref().unwrap_or("-")
        ));
    }
    let undecided = matches!(report.finite, Verdict::Undecided(_));
    emit(&report, format, text);
    Ok(if undecided { 2 } else { 0 })
}

fn cmd_enumerate(p: &ParamSet, cap: usize, format: Format) -> Result<i32> {
    match classifier::cardinalities(p, cap) {
        Ok(cards) => {
            let text = format!(
                "|Mon| = {}\n|Ref| = {}\n|Mon|/|Ref| = {}",
                cards.mon, cards.reflection, cards.quotient
            );
            emit(&cards, format, text);
            Ok(0)
        }
        Err(Error::IncompleteEnumeration) => {
            eprintln!("enumeration exceeded the cap of {cap} elements");
            Ok(2)
        }
        Err(e) => Err(e),
    }
}

fn cmd_structure(p: &ParamSet, cap: usize, verify: bool, format: Format) -> Result<i32> {
    let report = classifier::structure_classify(p, cap, verify)?;
    let text = format!(
        "case: {}\ntype: {}\npermutation: {:?}\nintersection: {} (order {})\nverified: {:?}",
        report.case,
        report.structure_type,
        report.permutation,
        report.intersection,
        report.intersection_order,
        report.verified
    );
    let failed = report.verified == Some(false);
    emit(&report, format, text);
    Ok(if failed { 3 } else { 0 })
}

fn cmd_verify_decomposition(
    p: &ParamSet,
    lemma: &str,
    cap: usize,
    format: Format,
) -> Result<i32> {
    let report = match lemma {
        "red1" => verify_red1(p, cap)?,
        "red2" => verify_red2(p, cap)?,
        other => return Err(Error::Parse(format!("unknown lemma `{other}`"))),
    };
    let mut text = format!("lemma: {}", report.lemma);
    for c in &report.checks {
        text.push_str(&format!(
            "\n  {} {}: {}",
            if c.pass { "ok " } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    let passed = report.passed();
    emit(&report, format, text);
    Ok(if passed { 0 } else { 3 })
}

/// One expanded, reconstructed table-row instance and its enumerated
/// cardinalities next to the printed values.
#[derive(Debug, Clone, Serialize)]
pub struct TableRowResult {
    pub row: String,
    pub instance: String,
    pub alpha_sign: char,
    pub a: String,
    pub b: String,
    pub c: Vec<String>,
    pub mon: usize,
    #[serde(rename = "ref")]
    pub reflection: usize,
    pub quotient: usize,
    pub mk_group: usize,
    pub expected: [usize; 4],
    pub matched: bool,
}

pub struct TableRow {
    /// Printed row label.
    pub label: &'static str,
    /// Instances: exponent arguments (x, y) of gamma_1 = e(x) and the
    /// second key (beta/alpha = e(y) for table 1, gamma_2 = e(y) for
    /// table 2).
    pub instances: Vec<((i64, i64), (i64, i64))>,
    pub expected: [usize; 4],
}

pub fn table1_rows() -> Vec<TableRow> {
    let z = |q: i64, k: i64| (k, q);
    vec![
        TableRow {
            label: "(z3, z3^j)",
            instances: vec![((1, 3), z(3, 1)), ((1, 3), z(3, 2))],
            expected: [1152, 192, 6, 6],
        },
        TableRow {
            label: "(z3, z4^(2j-1))",
            instances: vec![((1, 3), z(4, 1)), ((1, 3), z(4, 3))],
            expected: [6912, 1152, 6, 6],
        },
        TableRow {
            label: "(z3, z5^k)",
            instances: (1..=4).map(|k| ((1, 3), z(5, k))).collect(),
            expected: [86400, 14400, 6, 6],
        },
        TableRow {
            label: "(z4, z3^j)",
            instances: vec![((1, 4), z(3, 1)), ((1, 4), z(3, 2))],
            expected: [9216, 1152, 8, 8],
        },
        TableRow {
            label: "(z5^i, z3^j)",
            instances: (1..=2)
                .flat_map(|i| (1..=2).map(move |j| ((i, 5), (j, 3))))
                .collect(),
            expected: [144000, 14400, 10, 10],
        },
        TableRow {
            label: "(z5, z5^2)",
            instances: vec![((1, 5), (2, 5))],
            expected: [144000, 14400, 10, 10],
        },
        TableRow {
            label: "(z5, z5^3)",
            instances: vec![((1, 5), (3, 5))],
            expected: [144000, 14400, 10, 10],
        },
        TableRow {
            label: "(z5^2, z5)",
            instances: vec![((2, 5), (1, 5))],
            expected: [144000, 14400, 10, 10],
        },
        TableRow {
            label: "(z5^2, z5^4)",
            instances: vec![((2, 5), (4, 5))],
            expected: [144000, 14400, 10, 10],
        },
    ]
}

pub fn table2_rows() -> Vec<TableRow> {
    vec![
        TableRow {
            label: "(z3, z4)",
            instances: vec![((1, 3), (1, 4))],
            expected: [13824, 1152, 12, 12],
        },
        TableRow {
            label: "(z3^2, z4)",
            instances: vec![((2, 3), (1, 4))],
            expected: [13824, 1152, 12, 12],
        },
        TableRow {
            label: "(z3, z3)",
            instances: vec![((1, 3), (1, 3))],
            expected: [1728, 192, 9, 9],
        },
    ]
}

/// Reconstruct parameters for one table-1 instance: gamma_2 = -1 and
/// delta_0 = -1 force alpha beta = -gamma_1; together with
/// beta/alpha = e(y) this fixes alpha up to sign.
pub fn table1_params(x: &Rational, y: &Rational, flip: bool) -> ParamSet {
    let mut a = (x + rat(1, 2) - y) / rat(2, 1);
    if flip {
        a += rat(1, 2);
    }
    let b = &a + y;
    params_create(2, a, b, vec![x.clone(), rat(1, 2)])
}

/// Reconstruct parameters for one table-2 instance: beta/alpha = -1
/// and delta_0 = -1 force alpha beta = gamma_1 gamma_2.
pub fn table2_params(x1: &Rational, x2: &Rational, flip: bool) -> ParamSet {
    let mut a = (x1 + x2 - rat(1, 2)) / rat(2, 1);
    if flip {
        a += rat(1, 2);
    }
    let b = &a + rat(1, 2);
    params_create(2, a, b, vec![x1.clone(), x2.clone()])
}

/// Run one reconstructed instance and compare against expectations.
pub fn table_instance(
    p: &ParamSet,
    label: &str,
    instance: &str,
    sign: char,
    expected: [usize; 4],
    cap: usize,
) -> Result<TableRowResult> {
    let cards = classifier::cardinalities(p, cap)?;
    let sub = mk_subgroup(p, cap)?;
    if !sub.is_complete() {
        return Err(Error::IncompleteEnumeration);
    }
    let got = [cards.mon, cards.reflection, cards.quotient, sub.cardinality()];
    Ok(TableRowResult {
        row: label.to_string(),
        instance: instance.to_string(),
        alpha_sign: sign,
        a: p.a.to_string(),
        b: p.b.to_string(),
        c: p.c.iter().map(|x| x.to_string()).collect(),
        mon: got[0],
        reflection: got[1],
        quotient: got[2],
        mk_group: got[3],
        expected,
        matched: got == expected,
    })
}

fn cmd_table(which: &str, cap: usize, both_signs: bool, format: Format) -> Result<i32> {
    let (rows, is_table1) = match which {
        "f4-check-1" => (table1_rows(), true),
        "f4-check-2" => (table2_rows(), false),
        other => {
            return Err(Error::Parse(format!(
                "unknown table `{other}` (use f4-check-1 or f4-check-2)"
            )))
        }
    };
    let signs: &[(char, bool)] = if both_signs {
        &[('+', false), ('-', true)]
    } else {
        &[('+', false)]
    };
    let mut results = Vec::new();
    let mut all_match = true;
    for row in &rows {
        for &((xn, xd), (yn, yd)) in &row.instances {
            let x = rat(xn, xd);
            let y = rat(yn, yd);
            let instance = format!("e({xn}/{xd}), e({yn}/{yd})");
            let mut per_sign: Vec<usize> = Vec::new();
            for &(sign, flip) in signs {
                let p = if is_table1 {
                    table1_params(&x, &y, flip)
                } else {
                    table2_params(&x, &y, flip)
                };
                match table_instance(&p, row.label, &instance, sign, row.expected, cap) {
                    Ok(res) => {
                        all_match &= res.matched;
                        per_sign.push(res.mon);
                        results.push(res);
                    }
                    Err(e) => {
                        all_match = false;
                        eprintln!("row {} {instance} sign {sign}: {e}", row.label);
                    }
                }
            }
            // the tables are keyed independently of the sign of alpha
            if per_sign.windows(2).any(|w| w[0] != w[1]) {
                all_match = false;
                eprintln!("row {} {instance}: cardinality differs between signs", row.label);
            }
        }
    }
    let text = {
        let mut t = format!(
            "{:<16} {:<18} {:^4} {:>8} {:>8} {:>6} {:>6}  match",
            "row", "instance", "sign", "|Mon|", "|Ref|", "M/R", "|<Mk>|"
        );
        for r in &results {
            t.push_str(&format!(
                "\n{:<16} {:<18} {:^4} {:>8} {:>8} {:>6} {:>6}  {}",
                r.row, r.instance, r.alpha_sign, r.mon, r.reflection, r.quotient, r.mk_group,
                if r.matched { "ok" } else { "MISMATCH" }
            ));
        }
        t
    };
    emit(&results, format, text);
    Ok(if all_match { 0 } else { 3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::delta0;

    #[test]
    fn parse_token_grammar() {
        let toks: Vec<String> = ["n=2", "a=1/6", "b=5/6", "c=1/3,1/2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let (p, extras) = parse_params(&toks).unwrap();
        assert_eq!(p.n, 2);
        assert_eq!(p.a, rat(1, 6));
        assert_eq!(p.c, vec![rat(1, 3), rat(1, 2)]);
        assert!(extras.is_empty());
    }

    #[test]
    fn parse_json_grammar() {
        let toks = vec![r#"{"n": 2, "a": "1/6", "b": "5/6", "c": ["1/3", "1/2"]}"#.to_string()];
        let (p, _) = parse_params(&toks).unwrap();
        assert_eq!(p.n, 2);
        assert_eq!(p.b, rat(5, 6));
    }

    #[test]
    fn parse_errors_name_the_token() {
        let toks: Vec<String> = ["n=2", "a=x/6", "b=5/6", "c=1/3,1/2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let err = parse_params(&toks).unwrap_err();
        assert!(err.to_string().contains("x/6"), "{err}");
        let toks: Vec<String> = ["n=3", "a=1/6", "b=5/6", "c=1/3,1/2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert!(parse_params(&toks).is_err());
    }

    #[test]
    fn table_reconstruction_satisfies_captions() {
        // table 1: gamma_2 = -1, delta_0 = -1, beta/alpha = e(y)
        for flip in [false, true] {
            let p = table1_params(&rat(1, 3), &rat(1, 5), flip);
            assert!(p.gamma[1].is_minus_one());
            assert!(delta0(&p).unwrap().is_minus_one());
            let ba = p.beta.div(&p.alpha).unwrap();
            let expect = crate::monodromy::unit_from_rational(&p.field, &rat(1, 5));
            assert_eq!(ba, expect);
        }
        // table 2: beta/alpha = -1, delta_0 = -1
        for flip in [false, true] {
            let p = table2_params(&rat(1, 3), &rat(1, 4), flip);
            assert!(p.beta.div(&p.alpha).unwrap().is_minus_one());
            assert!(delta0(&p).unwrap().is_minus_one());
        }
    }

    #[test]
    fn table2_small_row_matches() {
        // the (z3, z3) row is the cheapest: 1728 / 192 / 9 / 9
        let p = table2_params(&rat(1, 3), &rat(1, 3), false);
        let res =
            table_instance(&p, "(z3, z3)", "e(1/3), e(1/3)", '+', [1728, 192, 9, 9], 100_000)
                .unwrap();
        assert!(res.matched, "{res:?}");
    }
}
