//! The descent-set table for the rank-2 orbit of `R_4` and the length-2
//! interval table, recomputed from scratch.

use std::fmt::Write as _;

use clap::ValueEnum;
use renner::{classify_interval, descent_sets, format_reflections, standard_form, PartialPerm, Shape};
use serde::Serialize;

use crate::{to_json, Cli, CmdResult, Format, Outcome, UsageError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    Descents,
    Length2,
}

/// Rows of the descent table, one per case of the descent sets.
pub const DESCENT_ROWS: [&str; 5] = ["0012", "0013", "1002", "3002", "0420"];

/// Endpoints of the linear and diamond examples.
pub const LENGTH2_ROWS: [(&str, &str); 2] = [("0001", "0003"), ("0012", "0023")];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentRow {
    pub standard_form: String,
    pub element: PartialPerm,
    pub des_l: String,
    pub des_r: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Length2Row {
    pub shape: Shape,
    pub elements: usize,
    pub theta: PartialPerm,
    pub sigma: PartialPerm,
    pub rpoly: String,
    pub constant_term: i64,
}

pub fn descent_table() -> Vec<DescentRow> {
    DESCENT_ROWS
        .iter()
        .map(|s| {
            let p: PartialPerm = s.parse().unwrap();
            let d = descent_sets(&p);
            DescentRow {
                standard_form: standard_form(&p).to_string(),
                des_l: format_reflections(&d.left),
                des_r: format_reflections(&d.right),
                element: p,
            }
        })
        .collect()
}

pub fn length2_table() -> Result<Vec<Length2Row>, UsageError> {
    LENGTH2_ROWS
        .iter()
        .map(|(a, b)| {
            let (theta, sigma): (PartialPerm, PartialPerm) = (a.parse()?, b.parse()?);
            let c = classify_interval(&theta, &sigma)?;
            Ok(Length2Row {
                shape: c.shape,
                elements: c.interval.len(),
                rpoly: c.rpoly.display_factored(),
                constant_term: c.r_constant_term,
                theta,
                sigma,
            })
        })
        .collect()
}

pub fn descent_tsv() -> String {
    let mut out = String::from("sigma\tDes_L\tDes_R\n");
    for r in descent_table() {
        writeln!(out, "{}=({})\t{}\t{}", r.standard_form, r.element, r.des_l, r.des_r).unwrap();
    }
    out
}

pub fn length2_tsv() -> Result<String, UsageError> {
    let mut out = String::from("shape\telements\texample\tR(q)\tR(0)\n");
    for r in length2_table()? {
        writeln!(out, "{}\t{}\t({})<({})\t{}\t{}", r.shape, r.elements, r.theta, r.sigma, r.rpoly, r.constant_term)
            .unwrap();
    }
    Ok(out)
}

pub(crate) fn cmd_table(cli: &Cli, name: TableName) -> CmdResult {
    let out = match (name, cli.format) {
        (TableName::Descents, Format::Json) => to_json(&descent_table()),
        (TableName::Length2, Format::Json) => to_json(&length2_table()?),
        (TableName::Descents, Format::Text | Format::Tsv) => descent_tsv(),
        (TableName::Length2, Format::Text | Format::Tsv) => length2_tsv()?,
        (_, Format::Dot) => return Err(crate::unsupported(cli)),
    };
    Ok(Outcome::ok(out))
}
