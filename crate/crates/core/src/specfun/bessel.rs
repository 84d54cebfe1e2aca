use std::f64::consts::PI;

use super::gamma::{gamma_value, temme_gammas};
use crate::{Error, Result};

const SERIES_LIMIT: f64 = 8.0;
const ASYMPTOTIC_LIMIT: f64 = 30.0;
const NORMALIZED_SERIES_LIMIT: f64 = 0.5;

/// Bessel function of the first kind `J_ν(t)` for `ν > -1`, `t ≥ 0`.
///
/// Power series for `t ≤ 8`, Miller's backward recurrence normalized by the
/// Neumann-type sum `(t/2)^ν = Σ (ν+2k) Γ(ν+k)/k! · J_{ν+2k}(t)` up to
/// `t = 30`, and Hankel's asymptotic expansion beyond (as long as `ν² < t`).
pub fn bessel_j(nu: f64, t: f64) -> Result<f64> {
    check_order(nu)?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Domain(format!("J_ν needs a finite t ≥ 0, got {t}")));
    }
    Ok(j_value(nu, t))
}

pub(crate) fn j_value(nu: f64, t: f64) -> f64 {
    if t == 0.0 {
        return if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    if t <= SERIES_LIMIT {
        (0.5 * t).powf(nu) / gamma_value(nu + 1.0) * normalized_series(nu, t)
    } else if t > ASYMPTOTIC_LIMIT && nu * nu < t {
        j_asymptotic(nu, t)
    } else {
        j_miller(nu, t)
    }
}

/// Bessel function of the second kind `Y_ν(t)`, `t > 0`.
///
/// Evaluated with Temme's series (`t < 2`) or Steed's continued fractions;
/// negative orders use the reflection formula.
pub fn bessel_y(nu: f64, t: f64) -> Result<f64> {
    bessel_jy(nu, t).map(|(_, y)| y)
}

/// `(J_ν(t), Y_ν(t))` by the Temme/Steed continued-fraction method.
///
/// This route is independent of [`bessel_j`] and serves as a cross-check for
/// it.
pub fn bessel_jy(nu: f64, t: f64) -> Result<(f64, f64)> {
    if !nu.is_finite() {
        return Err(Error::Domain(format!("Bessel order must be finite, got {nu}")));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("Y_ν is singular at t = 0; need a finite t > 0, got {t}")));
    }
    if nu >= 0.0 {
        steed_jy(nu, t)
    } else {
        let mu = -nu;
        let (j, y) = steed_jy(mu, t)?;
        let (s, c) = (super::sin_pi(mu), cos_pi(mu));
        Ok((c * j - s * y, s * j + c * y))
    }
}

/// Normalized Bessel function `j_ν(t) = 2^ν Γ(ν+1) t^{-ν} J_ν(t)`, `ν > -1`.
///
/// Even in `t` and equal to 1 at the origin. For `|t| < 1/2` the even power
/// series in `t²` is summed directly.
pub fn normalized_j(nu: f64, t: f64) -> Result<f64> {
    check_order(nu)?;
    if !t.is_finite() {
        return Err(Error::Domain(format!("j_ν of non-finite argument {t}")));
    }
    Ok(normalized_j_value(nu, t))
}

pub(crate) fn normalized_j_value(nu: f64, t: f64) -> f64 {
    let t = t.abs();
    if t < NORMALIZED_SERIES_LIMIT {
        normalized_series(nu, t)
    } else {
        2f64.powf(nu) * gamma_value(nu + 1.0) * t.powf(-nu) * j_value(nu, t)
    }
}

fn check_order(nu: f64) -> Result<()> {
    if nu.is_finite() && nu > -1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("Bessel order must satisfy ν > -1, got {nu}")))
    }
}

fn cos_pi(z: f64) -> f64 {
    super::sin_pi(z + 0.5)
}

/// `Σ_m (-t²/4)^m / (m! (ν+1)_m)`, i.e. `₀F₁(;ν+1;-t²/4)`.
fn normalized_series(nu: f64, t: f64) -> f64 {
    let z = -0.25 * t * t;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= z / (m * (nu + m));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) && m * m > -z {
            break;
        }
        if m > 500.0 {
            break;
        }
    }
    sum
}

fn j_miller(nu: f64, t: f64) -> f64 {
    let top = t.max(nu) + 30.0 + (50.0 * t).sqrt();
    let n_start = 2 * ((top / 2.0).ceil() as usize);
    // coefficients (ν+2k) Γ(ν+k)/k!, with the k = 0 entry reduced to Γ(ν+1)
    let half = n_start / 2;
    let mut coeffs = Vec::with_capacity(half + 1);
    let g1 = gamma_value(nu + 1.0);
    coeffs.push(g1);
    let mut g = g1;
    for k in 1..=half {
        if k > 1 {
            g *= (nu + (k - 1) as f64) / k as f64;
        }
        coeffs.push((nu + 2.0 * k as f64) * g);
    }

    let mut f_next = 0.0;
    let mut f = 1e-30;
    let mut sum = 0.0;
    for n in (1..=n_start).rev() {
        if n % 2 == 0 {
            sum += coeffs[n / 2] * f;
        }
        let f_prev = 2.0 * (nu + n as f64) / t * f - f_next;
        f_next = f;
        f = f_prev;
        if f.abs() > 1e250 {
            f *= 1e-250;
            f_next *= 1e-250;
            sum *= 1e-250;
        }
    }
    sum += coeffs[0] * f;
    f * (0.5 * t).powf(nu) / sum
}

/// Hankel's `P`, `Q` for large argument.
fn hankel_pq(nu: f64, t: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * t);
        if term.abs() > last && k as f64 > nu {
            break;
        }
        let signed = match k % 4 {
            0 | 1 => term,
            _ => -term,
        };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
        last = term.abs();
        if last < 1e-17 {
            break;
        }
    }
    (p, q)
}

fn j_asymptotic(nu: f64, t: f64) -> f64 {
    let (p, q) = hankel_pq(nu, t);
    let chi = t - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * t)).sqrt() * (p * chi.cos() - q * chi.sin())
}

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAX_ITER: usize = 100_000;

/// Temme series / Steed continued fractions for `ν ≥ 0`, `x > 0`.
fn steed_jy(nu: f64, x: f64) -> Result<(f64, f64)> {
    let nl = if x < 2.0 { (nu + 0.5) as usize } else { (nu - x + 1.5).max(0.0) as usize };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: f_ν = J'_ν/J_ν
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAX_ITER {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!("CF1 did not converge for ν={nu}, x={x}")));
    }

    // downward recurrence to order μ
    let mut rjl = isign * 1e-30;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, rymu, mut ry1);
    if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..MAX_ITER {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numerical(format!("Temme series failed for ν={nu}, x={x}")));
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + iq
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut converged = false;
        for i in 2..MAX_ITER {
            a += 2.0 * (i - 1) as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numerical(format!("CF2 did not converge for ν={nu}, x={x}")));
        }
        let gam = (p - f) / q;
        let mag = (w / ((p - f) * gam + q)).sqrt();
        rjmu = mag.copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    let scale = rjmu / rjl;
    let j = rjl1 * scale;
    let _jp = rjp1 * scale;
    let mut ymu = rymu;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - ymu;
        ymu = ry1;
        ry1 = rytemp;
    }
    Ok((j, ymu))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // mpmath, 40 digits
    const J_TABLE: &[(f64, f64, f64)] = &[
        (-0.75, 0.3, 1.0422621958764426214),
        (-0.75, 3.0, -0.44337414075184035666),
        (-0.75, 7.9, -0.12576028518235610477),
        (-0.75, 9.5, -0.22929585433958807968),
        (-0.75, 25.0, 0.15397528984203684513),
        (-0.75, 31.0, 0.1432922235441293758),
        (-0.75, 49.5, 0.10575050486423603216),
        (-0.75, 120.0, 0.038524216098430867465),
        (-0.75, 800.0, -0.021333449851200513182),
        (-1.0 / 6.0, 0.3, 1.1827493085103434891),
        (-1.0 / 6.0, 3.0, -0.35026793443980080089),
        (-1.0 / 6.0, 7.9, 0.13386633930807375729),
        (-1.0 / 6.0, 9.5, -0.23181805123093828834),
        (-1.0 / 6.0, 25.0, 0.12597692172133939143),
        (-1.0 / 6.0, 31.0, 0.084154260724092058561),
        (-1.0 / 6.0, 49.5, 0.031282112050246965642),
        (-1.0 / 6.0, 120.0, 0.072508168781756251952),
        (-1.0 / 6.0, 800.0, 0.0016653086760221345983),
        (0.0, 0.3, 0.97762624653829608757),
        (0.0, 3.0, -0.26005195490193343762),
        (0.0, 7.9, 0.19436184484127831756),
        (0.0, 9.5, -0.1939287476874223554),
        (0.0, 25.0, 0.096266783275958116174),
        (0.0, 31.0, 0.0512081453045422488),
        (0.0, 49.5, 0.0019720993620572776198),
        (0.0, 120.0, 0.071823415829156127576),
        (0.0, 800.0, 0.0088974458838161347787),
        (0.25, 0.3, 0.67429964067164164507),
        (0.25, 3.0, -0.1006370643367312748),
        (0.25, 7.9, 0.25820331638847012236),
        (0.25, 9.5, -0.11442623157382232584),
        (0.25, 25.0, 0.040436476712673719024),
        (0.25, 31.0, -0.0037611270107668432377),
        (0.25, 49.5, -0.041502750038453563308),
        (0.25, 120.0, 0.061734178197433331932),
        (0.25, 800.0, 0.018463607419488912712),
        (1.0, 0.3, 0.14831881627310400774),
        (1.0, 3.0, 0.33905895852593645893),
        (1.0, 7.9, 0.21917939992175114408),
        (1.0, 9.5, 0.16126443075752985095),
        (1.0, 25.0, -0.12535024958028990465),
        (1.0, 31.0, -0.13302431666631419837),
        (1.0, 49.5, -0.11337219628326539141),
        (1.0, 120.0, -0.011805211433001891117),
        (1.0, 800.0, 0.02677513872232319513),
        (2.5, 0.3, 0.0026053018556586676952),
        (2.5, 3.0, 0.41271003220971599344),
        (2.5, 7.9, -0.26498382625804031664),
        (2.5, 9.5, 0.10032413675833476673),
        (2.5, 25.0, 0.0020381361533260554375),
        (2.5, 31.0, 0.045033789296924046755),
        (2.5, 49.5, 0.073525516326300816134),
        (2.5, 120.0, -0.043763465750106948594),
        (2.5, 800.0, -0.025170894550621922523),
        (5.0, 0.3, 6.3044326337710722806e-7),
        (5.0, 3.0, 0.043028434877047583925),
        (5.0, 7.9, 0.20747350940067688271),
        (5.0, 9.5, -0.16132126019962659027),
        (5.0, 25.0, -0.066007995398422993392),
        (5.0, 31.0, -0.10362070962160754903),
        (5.0, 49.5, -0.10957307037574910778),
        (5.0, 120.0, -0.0045718460339604955136),
        (5.0, 800.0, 0.026905584896033661914),
        (11.5, 0.3, 2.4436778395651587335e-18),
        (11.5, 3.0, 6.4583674547138335592e-7),
        (11.5, 7.9, 0.014258801222940995545),
        (11.5, 9.5, 0.062826156163569825062),
        (11.5, 25.0, -0.14089942990876011771),
        (11.5, 31.0, -0.024626255353525957001),
        (11.5, 49.5, 0.096580373697337320254),
        (11.5, 120.0, 0.028490789725785117175),
        (11.5, 800.0, -0.014677397417161808344),
    ];
    const Y_TABLE: &[(f64, f64, f64)] = &[
        (0.0, 0.01, -3.0054556370836459578),
        (0.0, 0.5, -0.44451873350670655715),
        (0.0, 1.9, 0.4968199712838202059),
        (0.0, 2.1, 0.51829373751376072861),
        (0.0, 10.0, 0.055671167283599391424),
        (0.0, 49.0, -0.10096113511605106371),
        (0.5, 0.01, -7.9784466690727600478),
        (0.5, 0.5, -0.99024588024340488002),
        (0.5, 1.9, 0.18713496934630301757),
        (0.5, 2.1, 0.27796455747216342874),
        (0.5, 10.0, 0.21170886633139815292),
        (0.5, 49.0, -0.034262592820786852418),
        (1.0, 0.01, -63.678596282060656374),
        (1.0, 0.5, -1.4714723926702430692),
        (1.0, 1.9, -0.16440577233159526262),
        (1.0, 2.1, -0.051678612130423582067),
        (1.0, 10.0, 0.24901542420695388392),
        (1.0, 49.0, 0.051872677056803015976),
        (1.25, 0.01, -217.02001233018105408),
        (1.25, 0.5, -1.8715902300683554869),
        (1.25, 1.9, -0.31711855528124261401),
        (1.25, 2.1, -0.20596525797834095451),
        (1.25, 10.0, 0.21744103014167333984),
        (1.25, 49.0, 0.086348170533764355957),
        (2.0, 0.01, -12732.713800775047629),
        (2.0, 0.5, -5.4413708371742657196),
        (2.0, 1.9, -0.66987867900128890339),
        (2.0, 2.1, -0.5675114633522593782),
        (2.0, 10.0, -0.0058680824422086146398),
        (2.0, 49.0, 0.10307838724081853375),
        (3.0, 0.01, -5093021.8417137369909),
        (3.0, 0.5, -42.059494304723882688),
        (3.0, 1.9, -1.245865130829012955),
        (3.0, 2.1, -1.0292956037786419002),
        (3.0, 10.0, -0.25136265718383732978),
        (3.0, 49.0, -0.043458114833062727506),
    ];

    #[test]
    fn j_matches_reference_table() {
        for &(nu, t, expected) in J_TABLE {
            let got = bessel_j(nu, t).unwrap();
            assert_abs_diff_eq!(got, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn steed_route_matches_reference_table() {
        for &(nu, t, expected) in J_TABLE {
            let (j, _) = bessel_jy(nu, t).unwrap();
            assert_abs_diff_eq!(j, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn y_matches_reference_table() {
        for &(nu, t, expected) in Y_TABLE {
            let got = bessel_y(nu, t).unwrap();
            let tol = 1e-10 * expected.abs().max(1.0);
            assert!((got - expected).abs() <= tol, "Y_{nu}({t}) = {got}, want {expected}");
        }
    }

    #[test]
    fn half_integer_closed_forms() {
        let mut t = 0.05;
        while t < 50.0 {
            let s = (2.0 / (PI * t)).sqrt();
            assert_abs_diff_eq!(bessel_j(0.5, t).unwrap(), s * t.sin(), epsilon = 1e-12);
            assert_abs_diff_eq!(bessel_j(-0.5, t).unwrap(), s * t.cos(), epsilon = 1e-12);
            assert_abs_diff_eq!(bessel_y(0.5, t).unwrap(), -s * t.cos(), epsilon = 1e-10);
            t += 0.37;
        }
    }

    #[test]
    fn operation_examples() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(bessel_j(0.5, PI).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(bessel_j(1.0, 1.0).unwrap(), 0.440_050_585_744_933_5, epsilon = 1e-15);
        assert_abs_diff_eq!(bessel_y(0.5, PI / 2.0).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(bessel_y(0.0, 1.0).unwrap(), 0.088_256_964_215_676_96, epsilon = 1e-14);
        assert_abs_diff_eq!(bessel_y(0.5, PI).unwrap(), (2.0 / (PI * PI)).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn y_at_zero_is_a_domain_error() {
        assert!(matches!(bessel_y(0.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(-1.5, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn regimes_agree_at_their_boundaries() {
        for nu in [-0.75, 0.0, 0.3, 1.0, 2.75] {
            let t = SERIES_LIMIT;
            let series = (0.5 * t).powf(nu) / gamma_value(nu + 1.0) * normalized_series(nu, t);
            assert_abs_diff_eq!(series, j_miller(nu, t), epsilon = 1e-12);
            let t = ASYMPTOTIC_LIMIT + 1e-9;
            assert_abs_diff_eq!(j_asymptotic(nu, t), j_miller(nu, t), epsilon = 1e-12);
        }
    }

    #[test]
    fn normalized_j_closed_forms_and_origin() {
        for nu in [-0.9, -0.5, 0.0, 1.0 / 3.0, 2.5] {
            assert_eq!(normalized_j(nu, 0.0).unwrap(), 1.0);
        }
        let mut t = 0.01;
        while t < 40.0 {
            assert_abs_diff_eq!(normalized_j(0.5, t).unwrap(), t.sin() / t, epsilon = 1e-12);
            assert_abs_diff_eq!(normalized_j(-0.5, t).unwrap(), t.cos(), epsilon = 1e-12);
            t += 0.173;
        }
    }

    #[test]
    fn normalized_j_is_continuous_at_series_switch() {
        for nu in [-0.75, -1.0 / 6.0, 0.25, 3.0] {
            let below = normalized_j(nu, NORMALIZED_SERIES_LIMIT - 1e-16).unwrap();
            let above = normalized_j(nu, NORMALIZED_SERIES_LIMIT).unwrap();
            assert_abs_diff_eq!(below, above, epsilon = 1e-13);
        }
    }

    #[test]
    fn bessel_ode_residual_is_small() {
        // (B_ν)_t j_{(ν-1)/2}(τt) = -τ² j_{(ν-1)/2}(τt)
        let h = 1e-4;
        for nu in [0.5, 2.0 / 3.0, 1.5, 3.0] {
            for tau in [0.5, 1.0, 2.3] {
                let order = 0.5 * (nu - 1.0);
                let f = |t: f64| normalized_j(order, tau * t).unwrap();
                for t in [0.3, 1.0, 4.0, 9.0] {
                    let d1 = (f(t + h) - f(t - h)) / (2.0 * h);
                    let d2 = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
                    let residual = d2 + nu / t * d1 + tau * tau * f(t);
                    assert!(residual.abs() <= 1e-6, "residual {residual} at ν={nu} τ={tau} t={t}");
                }
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn normalized_j_is_even(nu in -0.99f64..6.0, t in 0.0f64..60.0) {
            proptest::prop_assert_eq!(normalized_j(nu, t).unwrap(), normalized_j(nu, -t).unwrap());
        }

        #[test]
        fn recurrence_and_steed_agree(nu in -0.99f64..8.0, t in 0.05f64..50.0) {
            let (j, _) = bessel_jy(nu, t).unwrap();
            proptest::prop_assert!((bessel_j(nu, t).unwrap() - j).abs() <= 1e-12);
        }
    }
}
