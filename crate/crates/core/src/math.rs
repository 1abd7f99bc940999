//! Thin wrappers over `libm` so the rest of the crate stays `no_std`-clean.

pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}

pub(crate) fn erf(x: f64) -> f64 {
    libm::erf(x)
}

#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}
