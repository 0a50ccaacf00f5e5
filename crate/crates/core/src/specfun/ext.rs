//! Extended-precision helpers for closed forms that cancel catastrophically
//! in double precision.
//!
//! Inputs are `f64` values taken as exact; only the arithmetic runs at the
//! requested binary precision.

use dashu_float::{round::mode::HalfEven, FBig};

use super::hypergeom::{settle_index, validate, SeriesControl};
use crate::error::{Error, Result};

pub(crate) type Big = FBig<HalfEven, 2>;

/// Largest working precision the log-gamma ratio supports at reasonable cost.
pub(crate) const MAX_BITS: usize = 768;

/// B_{2k} for k = 1..=25 as exact fractions.
const BERNOULLI: [(i128, i128); 25] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
    (-7709321041217, 510),
    (2577687858367, 6),
    (-26315271553053477373, 1919190),
    (2929993913841559, 6),
    (-261082718496449122051, 13530),
    (1520097643918070802691, 1806),
    (-27833269579301024235023, 690),
    (596451111593912163277961, 282),
    (-5609403368997817686249127547, 46410),
    (495057205241079648212477525, 66),
];

#[derive(Debug, Clone, Copy)]
pub(crate) struct Ext {
    bits: usize,
}

impl Ext {
    pub(crate) fn new(bits: usize) -> Self {
        Self { bits: bits.max(64) }
    }

    pub(crate) fn bits(&self) -> usize {
        self.bits
    }

    pub(crate) fn num(&self, v: f64) -> Big {
        Big::try_from(v)
            .expect("finite f64")
            .with_precision(self.bits)
            .value()
    }

    pub(crate) fn int(&self, v: i128) -> Big {
        Big::from(v).with_precision(self.bits).value()
    }

    /// Relative convergence threshold 2^-(bits + 8).
    fn rel_eps(&self) -> f64 {
        (-(self.bits as f64) - 8.0).exp2()
    }

    /// `ln Γ(z) − ½ ln 2π` via upward shift and the Stirling series.
    fn ln_gamma_shifted(&self, z: &Big) -> Big {
        let digits = self.bits as f64 * std::f64::consts::LOG10_2;
        // Smallest w for which the 25-term Stirling remainder drops below 10^-digits.
        let w_min = ((21.5 + digits) * std::f64::consts::LN_10 / 49.0)
            .exp()
            .max(30.0);
        let shift = (w_min - to_f64(z)).ceil().max(0.0) as usize;
        let one = self.int(1);
        let mut prod = one.clone();
        let mut w = z.clone();
        for _ in 0..shift {
            prod = &prod * &w;
            w = &w + &one;
        }
        let half = self.num(0.5);
        let ln_w = w.ln();
        let mut acc = &(&(&w - &half) * &ln_w) - &w;
        let w2 = &w * &w;
        let mut w_pow = w.clone();
        for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
            let two_k = 2 * (k as i128 + 1);
            let coef = &self.int(num) / &self.int(den * two_k * (two_k - 1));
            acc = &acc + &(&coef / &w_pow);
            w_pow = &w_pow * &w2;
        }
        if shift > 0 {
            acc = &acc - &prod.ln();
        }
        acc
    }

    /// `ln(Γ(z + ½) / Γ(z))` at the working precision.
    pub(crate) fn ln_gamma_half_ratio(&self, z: &Big) -> Big {
        let hi = self.ln_gamma_shifted(&(z + &self.num(0.5)));
        let lo = self.ln_gamma_shifted(z);
        &hi - &lo
    }

    pub(crate) fn sqrt(&self, v: &Big) -> Big {
        use dashu_float::ops::SquareRoot;
        v.sqrt()
    }

    /// `pFq(upper; lower; x)` summed at the working precision.
    pub(crate) fn pfq(
        &self,
        upper: &[Big],
        lower: &[Big],
        x: &Big,
        ctl: SeriesControl,
    ) -> Result<Big> {
        const OP: &str = "gen_hypergeom_pfq[ext]";
        let up64: Vec<f64> = upper.iter().map(to_f64).collect();
        let lo64: Vec<f64> = lower.iter().map(to_f64).collect();
        validate(OP, &up64, &lo64, to_f64(x))?;
        if upper.len() > lower.len() {
            return Err(Error::Domain {
                op: OP,
                detail: "extended evaluation supports p <= q only".into(),
            });
        }
        let one = self.int(1);
        if *x == Big::ZERO {
            return Ok(one);
        }
        let settle = settle_index(&up64, &lo64);
        let eps = self.rel_eps();
        let mut term = one.clone();
        let mut sum = one.clone();
        let mut k_big = self.int(0);
        for k in 0..ctl.max_terms {
            let mut numer = x.clone();
            for a in upper {
                numer = &numer * &(a + &k_big);
            }
            let mut denom = &k_big + &one;
            for b in lower {
                denom = &denom * &(b + &k_big);
            }
            let ratio = &numer / &denom;
            term = &term * &ratio;
            sum = &sum + &term;
            k_big = &k_big + &one;
            if term == Big::ZERO {
                return Ok(sum);
            }
            let rel = (&term / &sum).to_f64().value().abs();
            let ratio_mag = ratio.to_f64().value().abs();
            if rel <= eps && k >= settle && ratio_mag < 1.0 {
                return Ok(sum);
            }
        }
        Err(Error::Convergence {
            op: OP,
            terms: ctl.max_terms,
            last_term: term.to_f64().value(),
            partial_sum: sum.to_f64().value(),
        })
    }
}

pub(crate) fn to_f64(v: &Big) -> f64 {
    v.to_f64().value()
}

/// Natural log of a positive extended value, returned in double precision.
pub(crate) fn ln_to_f64(v: &Big) -> f64 {
    v.ln().to_f64().value()
}
