//! Text format for matrix stacks (`.l1t2`).
//!
//! Line 1 holds `D M N`; then N blocks follow, each D lines of M decimal
//! numbers (row-major within a slice). Numbers are written with 17
//! significant digits, which round-trips every f64 exactly. Blank lines
//! between blocks are permitted and ignored.

use std::fmt::Write as _;
use std::path::Path;

use l1tucker2_core::{Matrix, MatrixStack};

use crate::HarnessError;

pub fn format_stack(stack: &MatrixStack) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", stack.d(), stack.m(), stack.len());
    for (i, slice) in stack.slices().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for r in 0..stack.d() {
            let row: Vec<String> = slice.row(r).iter().map(|x| format!("{x:.16e}")).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    out
}

pub fn parse_stack(text: &str) -> Result<MatrixStack, HarnessError> {
    let mut tokens = text.split_whitespace();
    let mut next_usize = |what: &str| -> Result<usize, HarnessError> {
        tokens
            .next()
            .ok_or_else(|| HarnessError::StackFile(format!("missing {what}")))?
            .parse::<usize>()
            .map_err(|_| HarnessError::StackFile(format!("invalid {what}")))
    };
    let d = next_usize("D")?;
    let m = next_usize("M")?;
    let n = next_usize("N")?;
    if d == 0 || m == 0 || n == 0 {
        return Err(HarnessError::StackFile(
            "D, M and N must be positive".into(),
        ));
    }
    let mut slices = Vec::with_capacity(n);
    for i in 0..n {
        let mut data = Vec::with_capacity(d * m);
        for _ in 0..d * m {
            let tok = tokens.next().ok_or_else(|| {
                HarnessError::StackFile(format!("slice {i}: not enough entries"))
            })?;
            let value: f64 = tok.parse().map_err(|_| {
                HarnessError::StackFile(format!("slice {i}: invalid number '{tok}'"))
            })?;
            data.push(value);
        }
        slices.push(Matrix::new(d, m, data).map_err(HarnessError::Core)?);
    }
    if tokens.next().is_some() {
        return Err(HarnessError::StackFile(
            "trailing data after the last slice".into(),
        ));
    }
    MatrixStack::new(slices).map_err(HarnessError::Core)
}

pub fn write_stack(path: &Path, stack: &MatrixStack) -> Result<(), HarnessError> {
    std::fs::write(path, format_stack(stack))?;
    Ok(())
}

pub fn read_stack(path: &Path) -> Result<MatrixStack, HarnessError> {
    let text = std::fs::read_to_string(path)?;
    parse_stack(&text)
}
