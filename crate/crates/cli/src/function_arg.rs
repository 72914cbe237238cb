//! Text syntax for entire functions on the command line.
//!
//! | syntax               | function                      |
//! |----------------------|-------------------------------|
//! | `const:c`            | the constant `c`              |
//! | `z^n`                | `z^n`                         |
//! | `e:n`                | `sqrt(α^n / n!) z^n`          |
//! | `kernel:re,im`       | normalized kernel `k_w`       |
//! | `poly:c0,c1,...`     | `c0 + c1 z + ...` (real)      |
//! | `qexp:a,b,c`         | `exp(a z² + b z + c)` (real)  |

use fock_core::EntireFunction;
use num_complex::Complex64;

use crate::error::CliError;

const FIELD: &str = "function";

fn numbers(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            let x: f64 = t
                .trim()
                .parse()
                .map_err(|_| CliError::field(FIELD, format!("`{t}` is not a number")))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(CliError::field(FIELD, format!("`{t}` is not finite")))
            }
        })
        .collect()
}

fn degree(s: &str) -> Result<u32, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::field(FIELD, format!("`{s}` is not a nonnegative integer")))
}

pub fn parse_function(spec: &str) -> Result<EntireFunction, CliError> {
    let spec = spec.trim();
    if let Some(n) = spec.strip_prefix("z^") {
        return Ok(EntireFunction::monomial(degree(n)?));
    }
    if spec == "z" {
        return Ok(EntireFunction::monomial(1));
    }
    let (kind, args) = spec
        .split_once(':')
        .ok_or_else(|| CliError::field(FIELD, format!("unrecognized `{spec}`")))?;
    let real = |x: f64| Complex64::new(x, 0.0);
    match kind {
        "const" => match numbers(args)?.as_slice() {
            [c] => Ok(EntireFunction::constant(*c)),
            _ => Err(CliError::field(FIELD, "const takes one value")),
        },
        "e" => Ok(EntireFunction::orthonormal(degree(args)?)),
        "kernel" => match numbers(args)?.as_slice() {
            [re, im] => Ok(EntireFunction::kernel(Complex64::new(*re, *im))),
            _ => Err(CliError::field(FIELD, "kernel takes re,im")),
        },
        "poly" => Ok(EntireFunction::Polynomial(numbers(args)?.into_iter().map(real).collect())),
        "qexp" => match numbers(args)?.as_slice() {
            [a] => Ok(EntireFunction::QuadraticExponential {
                a: real(*a),
                b: real(0.0),
                c: real(0.0),
            }),
            [a, b, c] => Ok(EntireFunction::QuadraticExponential {
                a: real(*a),
                b: real(*b),
                c: real(*c),
            }),
            _ => Err(CliError::field(FIELD, "qexp takes a or a,b,c")),
        },
        _ => Err(CliError::field(FIELD, format!("unknown kind `{kind}`"))),
    }
}
