//! Parser for transform spec strings: `name:key=val,...` with an optional
//! parenthesized base, e.g. `affine:A=2,B=1(power:p=0)`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::transform::Transform;

struct Params<'a> {
    pairs: Vec<(&'a str, &'a str)>,
    context: &'a str,
}

impl<'a> Params<'a> {
    fn parse(raw: &'a str, context: &'a str) -> Result<Self> {
        let mut pairs = Vec::new();
        if !raw.is_empty() {
            for item in raw.split(',') {
                let (k, v) = item.split_once('=').ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "expected key=value in `{context}`, got `{item}`"
                    ))
                })?;
                pairs.push((k.trim(), v.trim()));
            }
        }
        Ok(Params { pairs, context })
    }

    fn take(&mut self, key: &str) -> Option<&'a str> {
        let pos = self.pairs.iter().position(|(k, _)| *k == key)?;
        Some(self.pairs.remove(pos).1)
    }

    fn float(&mut self, key: &str) -> Result<f64> {
        let raw = self.take(key).ok_or_else(|| {
            Error::InvalidParameter(format!("missing `{key}` in `{}`", self.context))
        })?;
        raw.parse::<f64>().map_err(|_| {
            Error::InvalidParameter(format!("`{key}={raw}` is not a number"))
        })
    }

    fn flag(&mut self, key: &str, default: bool) -> Result<bool> {
        match self.take(key) {
            None => Ok(default),
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            Some(raw) => Err(Error::InvalidParameter(format!(
                "`{key}={raw}` is not true/false"
            ))),
        }
    }

    fn finish(self) -> Result<()> {
        if let Some((k, _)) = self.pairs.first() {
            return Err(Error::InvalidParameter(format!(
                "unknown key `{k}` in `{}`",
                self.context
            )));
        }
        Ok(())
    }
}

/// Parse a transform spec string into a [`Transform`].
pub fn parse_transform(spec: &str) -> Result<Transform> {
    let spec = spec.trim();
    // split off the parenthesized base, which must run to the final ')'
    let (head, base) = match spec.find('(') {
        None => (spec, None),
        Some(open) => {
            if !spec.ends_with(')') {
                return Err(Error::InvalidParameter(format!(
                    "unbalanced parentheses in `{spec}`"
                )));
            }
            (&spec[..open], Some(&spec[open + 1..spec.len() - 1]))
        }
    };
    let (name, raw_params) = match head.split_once(':') {
        None => (head, ""),
        Some((n, p)) => (n, p),
    };
    let name = name.trim();
    let mut params = Params::parse(raw_params, spec)?;

    let require_base = |base: Option<&str>| -> Result<Transform> {
        match base {
            Some(b) => parse_transform(b),
            None => Err(Error::InvalidParameter(format!(
                "`{name}` needs a parenthesized base transform"
            ))),
        }
    };
    let no_base = |base: Option<&str>| -> Result<()> {
        match base {
            None => Ok(()),
            Some(_) => Err(Error::InvalidParameter(format!(
                "`{name}` does not take a base transform"
            ))),
        }
    };

    let transform = match name {
        "power" => {
            no_base(base)?;
            Transform::power(params.float("p")?)
        }
        "powerstar" => {
            no_base(base)?;
            Transform::power_star(params.float("p")?)
        }
        "logpower" => {
            no_base(base)?;
            Transform::log_power(params.float("alpha")?)
        }
        "halflogk" => {
            no_base(base)?;
            let k = params.float("k")?;
            let normalized = params.flag("normalized", false)?;
            Transform::scaled_half_log(k, normalized)?
        }
        "affine" => {
            let a = params.float("A")?;
            let b = params.float("B")?;
            require_base(base)?.affine(a, b)?
        }
        "reflect" => require_base(base)?.reflect()?,
        "rescale" => {
            let lambda = params.float("lambda")?;
            require_base(base)?.rescale(lambda)?
        }
        "restrict" => {
            let lo = params.float("lo")?;
            let hi = params.float("hi")?;
            let lo_closed = params.flag("lo_closed", lo.is_finite())?;
            let hi_closed = params.flag("hi_closed", hi.is_finite())?;
            let sub = Interval::new(lo, hi, lo_closed, hi_closed)?;
            require_base(base)?.restrict(sub)?
        }
        "conjexp" => require_base(base)?.conj_exp()?,
        "conjlog" => require_base(base)?.conj_log()?,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown transform `{other}`"
            )))
        }
    };
    params.finish()?;
    Ok(transform)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math;

    #[test]
    fn parses_catalog_specs() {
        let t = parse_transform("power:p=0.5").unwrap();
        assert_eq!(t.spec_string(), "power:p=0.5");
        let t = parse_transform("logpower:alpha=0.5").unwrap();
        assert!((t.eval(math::exp(-4.0)).unwrap().as_finite().unwrap() + 2.0).abs() < 1e-12);
        let t = parse_transform("halflogk:k=2,normalized=true").unwrap();
        assert_eq!(t.interval().hi(), 2.0);
    }

    #[test]
    fn parses_nested_combinators() {
        let t = parse_transform("affine:A=2,B=1(power:p=0)").unwrap();
        assert!((t.eval(1.0).unwrap().as_finite().unwrap() - 1.0).abs() < 1e-15);
        let t = parse_transform("rescale:lambda=2(reflect(power:p=1))").unwrap();
        assert!(t.interval().contains(-1.0));
        let t = parse_transform("restrict:lo=0,hi=inf,lo_closed=false(power:p=1)").unwrap();
        assert!(!t.interval().contains(0.0));
    }

    #[test]
    fn roundtrips_through_spec_string() {
        for spec in [
            "power:p=-1.5",
            "powerstar:p=3",
            "logpower:alpha=-1",
            "halflogk:k=4,normalized=true",
            "affine:A=2,B=-1(power:p=0.5)",
            "conjexp(power:p=0)",
            "conjlog(power:p=2)",
        ] {
            let t = parse_transform(spec).unwrap();
            let again = parse_transform(&t.spec_string()).unwrap();
            assert_eq!(t.spec_string(), again.spec_string());
        }
    }

    #[test]
    fn rejects_malformed_specs() {
        assert!(parse_transform("power").is_err()); // missing p
        assert!(parse_transform("power:p=x").is_err());
        assert!(parse_transform("power:p=1,q=2").is_err()); // unknown key
        assert!(parse_transform("frobnicate:p=1").is_err());
        assert!(parse_transform("affine:A=1,B=0").is_err()); // missing base
        assert!(parse_transform("reflect(power:p=1").is_err()); // unbalanced
        assert!(parse_transform("power:p=1(power:p=2)").is_err()); // base not allowed
    }
}
