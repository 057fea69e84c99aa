use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::circle::{grid_unit, ComplexGrid};
use crate::error::{Error, Result};

/// Closed-form evaluator valid on the closed disk.
pub type Evaluator = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// Boundary samples of a function in the disk algebra, optionally backed by a
/// closed-form evaluator.
#[derive(Clone)]
pub struct BoundaryFunction {
    samples: ComplexGrid,
    evaluator: Option<Evaluator>,
    name: String,
}

impl fmt::Debug for BoundaryFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryFunction")
            .field("name", &self.name)
            .field("n", &self.n())
            .field("closed_form", &self.evaluator.is_some())
            .finish()
    }
}

impl BoundaryFunction {
    /// Samples a closed-form function on the `n`-point grid.
    pub fn closed_form(
        name: impl Into<String>,
        n: usize,
        f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let f: Evaluator = Arc::new(f);
        Self::from_evaluator(name, n, f)
    }

    pub fn from_evaluator(name: impl Into<String>, n: usize, f: Evaluator) -> Result<Self> {
        crate::circle::check_grid_size(n)?;
        let samples = ComplexGrid::new((0..n).map(|k| f(grid_unit(k, n))).collect())?;
        Ok(BoundaryFunction {
            samples,
            evaluator: Some(f),
            name: name.into(),
        })
    }

    /// Boundary-only function.
    pub fn from_samples(name: impl Into<String>, samples: ComplexGrid) -> Self {
        BoundaryFunction {
            samples,
            evaluator: None,
            name: name.into(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.samples.n()
    }

    pub fn samples(&self) -> &ComplexGrid {
        &self.samples
    }

    pub fn values(&self) -> &[Complex64] {
        self.samples.values()
    }

    pub fn evaluator(&self) -> Option<&Evaluator> {
        self.evaluator.as_ref()
    }

    pub fn has_evaluator(&self) -> bool {
        self.evaluator.is_some()
    }

    /// `f(z)` through the evaluator.
    pub fn eval(&self, z: Complex64) -> Option<Complex64> {
        self.evaluator.as_ref().map(|f| f(z))
    }

    pub fn sup_norm(&self) -> f64 {
        self.samples.sup_norm()
    }

    /// The same function without its evaluator.
    pub fn boundary_only(&self) -> Self {
        Self::from_samples(self.name.clone(), self.samples.clone())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn combine(
        &self,
        other: &BoundaryFunction,
        name: String,
        op: impl Fn(Complex64, Complex64) -> Complex64 + Send + Sync + Clone + 'static,
    ) -> Result<BoundaryFunction> {
        if self.n() != other.n() {
            return Err(Error::GridMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        let samples = ComplexGrid::new(
            self.values()
                .iter()
                .zip(other.values())
                .map(|(&a, &b)| op(a, b))
                .collect(),
        )?;
        let evaluator = match (&self.evaluator, &other.evaluator) {
            (Some(f), Some(g)) => {
                let (f, g) = (f.clone(), g.clone());
                Some(Arc::new(move |z| op(f(z), g(z))) as Evaluator)
            }
            _ => None,
        };
        Ok(BoundaryFunction {
            samples,
            evaluator,
            name,
        })
    }

    /// Pointwise product.
    pub fn mul(&self, other: &BoundaryFunction) -> Result<BoundaryFunction> {
        self.combine(other, format!("({})*({})", self.name, other.name), |a, b| a * b)
    }

    /// Pointwise difference.
    pub fn sub(&self, other: &BoundaryFunction) -> Result<BoundaryFunction> {
        self.combine(other, format!("({})-({})", self.name, other.name), |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> BoundaryFunction {
        let samples = self.samples.map(|v| v * c).expect("scaling keeps samples finite");
        BoundaryFunction {
            samples,
            evaluator: self.evaluator.clone().map(|f| Arc::new(move |z| c * f(z)) as Evaluator),
            name: format!("{c}*({})", self.name),
        }
    }
}

/// Built-in test functions.
pub mod builtin {
    use super::*;

    pub fn constant(n: usize, c: Complex64) -> Result<BoundaryFunction> {
        BoundaryFunction::closed_form(format!("const:{c}"), n, move |_| c)
    }

    /// `f(z) = z`.
    pub fn identity(n: usize) -> Result<BoundaryFunction> {
        BoundaryFunction::closed_form("z", n, |z| z)
    }

    /// `f(z) = 1 − z`.
    pub fn one_minus_z(n: usize) -> Result<BoundaryFunction> {
        BoundaryFunction::closed_form("oneminusz", n, |z| 1.0 - z)
    }

    /// `Σ c_k z^k`.
    pub fn polynomial(n: usize, coeffs: Vec<Complex64>) -> Result<BoundaryFunction> {
        let name = format!(
            "poly:{}",
            coeffs
                .iter()
                .map(|c| format!("{c}"))
                .collect::<Vec<_>>()
                .join(",")
        );
        BoundaryFunction::closed_form(name, n, move |z| {
            coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
        })
    }

    /// `(1 − z)^β`, principal branch.
    pub fn power(n: usize, beta: f64) -> Result<BoundaryFunction> {
        BoundaryFunction::closed_form(format!("power:{beta}"), n, move |z| {
            let w = 1.0 - z;
            if w.norm() == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                w.powf(beta)
            }
        })
    }

    /// Parses `poly:<c0>,<c1>,...`, `oneminusz`, `power:<β>`, `const:<c>` or `z`.
    /// Coefficients are real numbers or `re+imi`-style complex literals.
    pub fn parse(spec: &str, n: usize) -> Result<BoundaryFunction> {
        let (head, arg) = match spec.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (spec, None),
        };
        let need_arg = || arg.ok_or_else(|| Error::Parse(format!("function `{spec}` needs an argument")));
        match head {
            "oneminusz" => one_minus_z(n),
            "z" => identity(n),
            "poly" => {
                let coeffs = need_arg()?
                    .split(',')
                    .map(parse_complex)
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.is_empty() {
                    return Err(Error::Parse("empty coefficient list".into()));
                }
                polynomial(n, coeffs)
            }
            "power" => {
                let beta: f64 = need_arg()?
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{spec}`")))?;
                if !(beta >= 0.0) {
                    return Err(Error::Parse("exponent must be nonnegative".into()));
                }
                power(n, beta)
            }
            "const" => constant(n, parse_complex(need_arg()?)?),
            _ => Err(Error::Parse(format!("unknown function `{spec}`"))),
        }
    }

    /// `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
    pub fn parse_complex(s: &str) -> Result<Complex64> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad complex number `{s}`"));
        if let Ok(x) = s.parse::<f64>() {
            return Ok(Complex64::new(x, 0.0));
        }
        let body = s.strip_suffix('i').ok_or_else(bad)?;
        // split at the last sign that is not an exponent sign or the leading sign
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
                break;
            }
        }
        let imag = |t: &str| -> Result<f64> {
            match t {
                "" | "+" => Ok(1.0),
                "-" => Ok(-1.0),
                _ => t.parse::<f64>().map_err(|_| bad()),
            }
        };
        match split {
            Some(i) => Ok(Complex64::new(
                body[..i].parse::<f64>().map_err(|_| bad())?,
                imag(&body[i..])?,
            )),
            None => Ok(Complex64::new(0.0, imag(body)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::builtin::*;
    use super::*;

    #[test]
    fn samples_match_evaluator() {
        let f = polynomial(64, vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)]).unwrap();
        for (k, v) in f.values().iter().enumerate() {
            let z = grid_unit(k, 64);
            let direct = f.eval(z).unwrap();
            assert!((v - direct).norm() <= 1e-12 * direct.norm().max(1.0));
        }
    }

    #[test]
    fn exact_zero_at_one() {
        assert_eq!(one_minus_z(16).unwrap().values()[0], Complex64::new(0.0, 0.0));
        assert_eq!(power(16, 0.5).unwrap().values()[0], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn parse_complex_forms() {
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("1.5-2i").unwrap(), Complex64::new(1.5, -2.0));
        assert_eq!(parse_complex("1e-3+1e-2i").unwrap(), Complex64::new(1e-3, 1e-2));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn parse_function_specs() {
        assert!(parse("oneminusz", 16).is_ok());
        assert!(parse("poly:1,-1", 16).is_ok());
        assert!(parse("power:0.5", 16).is_ok());
        assert!(parse("power", 16).is_err());
        assert!(parse("sinh", 16).is_err());
    }

    #[test]
    fn products_keep_evaluators() {
        let f = one_minus_z(16).unwrap();
        let g = identity(16).unwrap();
        let p = f.mul(&g).unwrap();
        let z = Complex64::new(0.3, 0.2);
        assert!((p.eval(z).unwrap() - (1.0 - z) * z).norm() < 1e-15);
        assert!(!p.mul(&f.boundary_only()).unwrap().has_evaluator());
        assert!(f.mul(&one_minus_z(32).unwrap()).is_err());
    }
}
