//! Named presets reproducing the worked examples. A preset string is a name
//! followed by its integer arguments, e.g. `toric 2 1`.

use paraclose_core::{Error, Result};

use crate::problem::{ProblemFile, Sourced};

pub const PRESET_NAMES: &[&str] = &["roberts", "toric", "fermat-quadric", "bs-monomial"];

pub fn preset(spec: &str) -> Result<ProblemFile> {
    let mut parts = spec.split_whitespace();
    let name = parts
        .next()
        .ok_or_else(|| Error::InvalidInput("empty preset".into()))?;
    let args: Vec<u32> = parts
        .map(|s| {
            s.parse().map_err(|_| {
                Error::InvalidInput(format!("preset argument `{s}` is not an integer"))
            })
        })
        .collect::<Result<_>>()?;
    match name {
        "roberts" => {
            if !args.is_empty() {
                return Err(Error::InvalidInput("`roberts` takes no arguments".into()));
            }
            Ok(roberts())
        }
        "toric" => {
            let [n, k] = args[..] else {
                return Err(Error::InvalidInput(
                    "usage: `toric <n> <k>` with n >= 1".into(),
                ));
            };
            if n == 0 {
                return Err(Error::InvalidInput("`toric` needs n >= 1".into()));
            }
            Ok(toric(n, k))
        }
        "fermat-quadric" => {
            let [i, j, k] = args[..] else {
                return Err(Error::InvalidInput(
                    "usage: `fermat-quadric <i> <j> <k>` with i, j, k >= 1".into(),
                ));
            };
            if i == 0 || j == 0 || k == 0 {
                return Err(Error::InvalidInput(
                    "`fermat-quadric` needs positive exponents".into(),
                ));
            }
            Ok(fermat_quadric(i, j, k))
        }
        "bs-monomial" => {
            if !args.is_empty() {
                return Err(Error::InvalidInput(
                    "`bs-monomial` takes no arguments".into(),
                ));
            }
            Ok(bs_monomial())
        }
        other => Err(Error::InvalidInput(format!(
            "unknown preset `{other}` (expected one of {PRESET_NAMES:?})"
        ))),
    }
}

fn roberts() -> ProblemFile {
    ProblemFile {
        field: Some("Q".into()),
        vars: vec!["x".into(), "y".into(), "z".into()],
        generators: vec![
            Sourced::synthetic("x^3"),
            Sourced::synthetic("y^3"),
            Sourced::synthetic("z^3"),
        ],
        h: Some(Sourced::synthetic("x^2*y^2*z^2")),
        params: vec![
            Sourced::synthetic("x"),
            Sourced::synthetic("y"),
            Sourced::synthetic("z"),
        ],
        k_max: Some(3),
        e_max: Some(2),
        ..ProblemFile::default()
    }
}

/// Base K[x,y,z]/(xy - z^n), forcing data (x^{k+1}, y^{k+1};
/// -z^{n-1} (xy)^k), so the forcing relation reads
/// x^{k+1} T1 + y^{k+1} T2 - z^{n-1} (xy)^k. The identity fields certify
/// x^{n(k+1)+1} T1^n = y^{n(k+1)-1} (x^{k+1} - T2 z)^n on D(x, y).
fn toric(n: u32, k: u32) -> ProblemFile {
    ProblemFile {
        field: Some("Q".into()),
        vars: vec!["x".into(), "y".into(), "z".into()],
        relations: vec![Sourced::synthetic(format!("x*y - z^{n}"))],
        generators: vec![
            Sourced::synthetic(format!("x^{}", k + 1)),
            Sourced::synthetic(format!("y^{}", k + 1)),
        ],
        h: Some(Sourced::synthetic(format!("-z^{}*(x*y)^{}", n - 1, k))),
        params: vec![Sourced::synthetic("x"), Sourced::synthetic("y")],
        lhs: Some(Sourced::synthetic(format!("x*(T1*x^{})^{}", k + 1, n))),
        rhs: Some(Sourced::synthetic(format!(
            "y^{}*(x^{} - T2*z)^{}",
            n * (k + 1) - 1,
            k + 1,
            n
        ))),
        k_max: Some(6),
        ..ProblemFile::default()
    }
}

/// Base K[x,y,z]/(x^i + y^j - z^k), forcing data (x, y; z).
fn fermat_quadric(i: u32, j: u32, k: u32) -> ProblemFile {
    ProblemFile {
        field: Some("Q".into()),
        vars: vec!["x".into(), "y".into(), "z".into()],
        relations: vec![Sourced::synthetic(format!("x^{i} + y^{j} - z^{k}"))],
        generators: vec![Sourced::synthetic("x"), Sourced::synthetic("y")],
        h: Some(Sourced::synthetic("z")),
        params: vec![Sourced::synthetic("x"), Sourced::synthetic("y")],
        k_max: Some(6),
        ..ProblemFile::default()
    }
}

fn bs_monomial() -> ProblemFile {
    ProblemFile {
        field: Some("Fp:5".into()),
        vars: vec!["x".into(), "y".into()],
        generators: vec![Sourced::synthetic("x^2"), Sourced::synthetic("y^2")],
        n: Some(2),
        w: Some(0),
        degree_bound: Some(8),
        e_max: Some(2),
        ..ProblemFile::default()
    }
}
