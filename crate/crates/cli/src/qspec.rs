use g2core::qarith::QContext;
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

/// Value of q as given on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QSpec {
    Generic,
    /// q = ζ_m^e
    Root { m: u64, e: u64 },
    Float(Complex64),
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FromStr for QSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("generic") {
            return Ok(QSpec::Generic);
        }
        if let Some(rest) = s.strip_prefix("root:") {
            let (m, e) = rest.split_once(':').ok_or_else(|| format!("expected root:<m>:<e>, got {s:?}"))?;
            let m: u64 = m.parse().map_err(|_| format!("bad order in {s:?}"))?;
            let e: u64 = e.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            if m == 0 {
                return Err("root order must be positive".into());
            }
            if gcd(m, e % m) != 1 {
                return Err(format!("exponent {e} is not coprime to {m}, so ζ_{m}^{e} is not primitive"));
            }
            return Ok(QSpec::Root { m, e: e % m });
        }
        if let Some(rest) = s.strip_prefix("float:") {
            let (re, im) = rest.split_once(',').unwrap_or((rest, "0"));
            let re: f64 = re.trim().parse().map_err(|_| format!("bad real part in {s:?}"))?;
            let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part in {s:?}"))?;
            let z = Complex64::new(re, im);
            if !z.is_finite() || z.norm() == 0.0 {
                return Err(format!("q must be finite and nonzero, got {s:?}"));
            }
            return Ok(QSpec::Float(z));
        }
        Err(format!("expected generic, root:<m>:<e> or float:<re>,<im>, got {s:?}"))
    }
}

impl fmt::Display for QSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSpec::Generic => write!(f, "generic"),
            QSpec::Root { m, e } => write!(f, "root:{m}:{e}"),
            QSpec::Float(z) => write!(f, "float:{},{}", z.re, z.im),
        }
    }
}

impl QSpec {
    pub fn context(&self) -> QContext {
        match *self {
            QSpec::Generic => QContext::Formal,
            QSpec::Root { m, e } => QContext::Cyclo { m, e },
            QSpec::Float(z) => QContext::float(z),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!("generic".parse::<QSpec>().unwrap(), QSpec::Generic);
        assert_eq!("root:26:1".parse::<QSpec>().unwrap(), QSpec::Root { m: 26, e: 1 });
        assert_eq!("float:1.1,0".parse::<QSpec>().unwrap(), QSpec::Float(Complex64::new(1.1, 0.0)));
        assert_eq!("float:2".parse::<QSpec>().unwrap(), QSpec::Float(Complex64::new(2.0, 0.0)));
    }

    #[test]
    fn rejects_bad_forms() {
        for s in ["root:26:2", "root:0:1", "float:0,0", "float:x", "zeta", "root:26"] {
            assert!(s.parse::<QSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["generic", "root:30:7", "float:1.1,-0.5"] {
            assert_eq!(s.parse::<QSpec>().unwrap().to_string(), s);
        }
    }
}
