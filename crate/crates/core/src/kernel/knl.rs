//! The `.knl` kernel text format.
//!
//! Line 1 is the decimal block count `m`; lines 2..m+1 carry `m`
//! whitespace-separated numbers each, row `i` column `j` giving `w[i][j]`.
//! Tokens are decimals (`0.25`, `1e-3`) or rationals (`p/q`). Any rational
//! token selects exact mode for the whole kernel; in exact mode decimal
//! tokens are converted exactly. The exact serializer always emits `p/q`
//! tokens so the arithmetic mode survives a round trip.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{KernelError, StepKernel};

/// A parsed kernel in whichever arithmetic mode the file selected.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyKernel {
    Exact(StepKernel<BigRational>),
    Float(StepKernel<f64>),
}

impl AnyKernel {
    pub fn m(&self) -> usize {
        match self {
            AnyKernel::Exact(k) => k.m(),
            AnyKernel::Float(k) => k.m(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, AnyKernel::Exact(_))
    }
}

pub fn parse_knl(input: &str) -> Result<AnyKernel, KernelError> {
    let mut lines: Vec<&str> = input.split('\n').collect();
    if lines.last() == Some(&"") {
        lines.pop();
    }
    if lines.is_empty() {
        return Err(KernelError::Parse { line: 1, msg: "empty input".into() });
    }
    let header = lines[0].trim();
    let m: usize = header.parse().map_err(|_| KernelError::Parse {
        line: 1,
        msg: format!("bad block count {header:?}"),
    })?;
    if m == 0 {
        return Err(KernelError::Empty);
    }
    if lines.len() != m + 1 {
        return Err(KernelError::Parse {
            line: lines.len().min(m + 1) + 1,
            msg: format!("expected {} rows, found {}", m, lines.len() - 1),
        });
    }
    let mut tokens: Vec<Vec<&str>> = Vec::with_capacity(m);
    for (i, line) in lines[1..].iter().enumerate() {
        let row: Vec<&str> = line.split_whitespace().collect();
        if row.len() != m {
            return Err(KernelError::Parse {
                line: i + 2,
                msg: format!("row has {} entries, expected {}", row.len(), m),
            });
        }
        tokens.push(row);
    }
    let exact = tokens.iter().flatten().any(|t| t.contains('/'));
    if exact {
        let mut rows = Vec::with_capacity(m);
        for (i, row) in tokens.iter().enumerate() {
            let mut out = Vec::with_capacity(m);
            for tok in row {
                out.push(parse_exact_token(tok).ok_or_else(|| KernelError::Parse {
                    line: i + 2,
                    msg: format!("bad rational entry {tok:?}"),
                })?);
            }
            rows.push(out);
        }
        Ok(AnyKernel::Exact(StepKernel::new(rows)?))
    } else {
        let mut rows = Vec::with_capacity(m);
        for (i, row) in tokens.iter().enumerate() {
            let mut out = Vec::with_capacity(m);
            for tok in row {
                let v: f64 = tok.parse().map_err(|_| KernelError::Parse {
                    line: i + 2,
                    msg: format!("bad float entry {tok:?}"),
                })?;
                out.push(v);
            }
            rows.push(out);
        }
        Ok(AnyKernel::Float(StepKernel::new(rows)?))
    }
}

/// `p/q` or a decimal with optional exponent, converted exactly.
fn parse_exact_token(tok: &str) -> Option<BigRational> {
    if let Some((p, q)) = tok.split_once('/') {
        let numer: BigInt = p.parse().ok()?;
        let denom: BigInt = q.parse().ok()?;
        if denom.is_zero() {
            return None;
        }
        return Some(BigRational::new(numer, denom));
    }
    let (mantissa, exp) = match tok.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (tok, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits
        .strip_prefix(['+', '-'])
        .unwrap_or(&digits)
        .bytes()
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let numer: BigInt = digits.parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        BigRational::from_integer(numer * ten.pow(scale as u32))
    } else {
        BigRational::new(numer, ten.pow(scale.unsigned_abs()))
    })
}

/// Serializes an exact kernel; every entry is written `p/q` (including
/// `0/1`) so the parser keeps the kernel in exact mode.
pub fn to_knl_exact(kern: &StepKernel<BigRational>) -> String {
    let m = kern.m();
    let mut out = format!("{m}\n");
    for i in 0..m {
        for j in 0..m {
            if j > 0 {
                out.push(' ');
            }
            let v = kern.get(i, j);
            out.push_str(&format!("{}/{}", v.numer(), v.denom()));
        }
        out.push('\n');
    }
    out
}

/// Serializes a float kernel with shortest round-trip decimal tokens.
pub fn to_knl_float(kern: &StepKernel<f64>) -> String {
    let m = kern.m();
    let mut out = format!("{m}\n");
    for i in 0..m {
        for j in 0..m {
            if j > 0 {
                out.push(' ');
            }
            out.push_str(&kern.get(i, j).to_string());
        }
        out.push('\n');
    }
    out
}
