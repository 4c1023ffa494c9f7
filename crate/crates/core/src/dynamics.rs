//! Dynamical cross-checks of the exact verdicts: dual-lattice orbits,
//! periodic-point counts, and Weyl-sum equidistribution along the unstable
//! leaf.
//!
//! The classifier decides ergodicity by an integer predicate (no cyclotomic
//! factor). This module recomputes the same facts the slow way, from the
//! dynamics those predicates summarize: a cyclotomic factor shows up as a
//! finite orbit of the transpose action on dual modes and as a vanishing
//! `det(A^n - E)`, and an irrational pairing `(m, gamma)` shows up as a
//! Weyl sum that averages out. Agreement between the two routes is the
//! point; each test here has an exact prediction attached.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::classify::EigenData;
use crate::error::Error;
use crate::exact::IntMatrix;
use crate::numeric::BigFloat;

/// Outcome of iterating one dual mode under the transpose action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitStatus {
    /// The orbit returned to its start after exactly this many steps.
    Periodic(u64),
    /// No return within the stated iteration budget.
    NoCycleWithin(u64),
}

/// One dual-orbit query: the starting mode and what iteration found.
///
/// The transpose acts bijectively on the mode lattice, so an orbit that
/// comes back at all comes back to its starting point; comparing against
/// the start alone is a complete cycle test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualOrbitResult {
    pub mode: Vec<BigInt>,
    pub status: OrbitStatus,
}

/// `|det(A^n - E)|` when nonzero, i.e. the number of points of period
/// dividing n; `Degenerate` flags an eigenvalue that is a root of unity of
/// order dividing n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeriodicCount {
    Count(BigInt),
    Degenerate,
}

/// Sampling conventions for the leaf simulation.
///
/// The step must be irrational, and not every irrational is safe: a step
/// lying in the field generated by the leaf direction can make
/// `delta * (m, gamma)` an exact integer for a mode that pairs nontrivially
/// with gamma, which pins the sampled character at 1 and fakes a resonance.
/// The default `sqrt(3) - 1` is quadratic over a field disjoint from every
/// quartic reciprocal spectrum's trace field, and a scan over the small
/// mode boxes used here puts its nonresonant phases at distance >= 1e-3
/// from the integers.
#[derive(Debug, Clone)]
pub struct SimConfig {
    /// Sample count N along the leaf.
    pub samples: u64,
    /// Mode box bound M: every mode with 0 < |m|_inf <= M is reported.
    pub mode_box: i64,
    /// Step along the leaf; `None` selects sqrt(3) - 1 at working precision.
    pub delta: Option<BigFloat>,
    /// Magnitude floor a resonant mode must stay above.
    pub resonant_floor: f64,
    /// Magnitude ceiling a nonresonant mode must stay below.
    pub nonresonant_ceiling: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            samples: 1_000_000,
            mode_box: 3,
            delta: None,
            resonant_floor: 0.99,
            nonresonant_ceiling: 0.05,
        }
    }
}

/// Measured Weyl sum for one mode, next to its exact prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylReport {
    pub mode: [i64; 4],
    pub samples: u64,
    /// `|N^{-1} sum_k exp(2 pi i k delta (m, gamma))|`, in [0, 1].
    pub magnitude: f64,
    /// Exact verdict of `(m, gamma) = 0`, decided in the number field.
    pub resonant_predicted: bool,
}

impl WeylReport {
    /// The measured magnitude lands on the side its prediction requires.
    pub fn confirms(&self, cfg: &SimConfig) -> bool {
        if self.resonant_predicted {
            self.magnitude > cfg.resonant_floor
        } else {
            self.magnitude < cfg.nonresonant_ceiling
        }
    }
}

fn validate_matrix(a: &IntMatrix) -> Result<(), Error> {
    if a.size() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: a.size(),
        });
    }
    if !a.is_unimodular() {
        return Err(Error::NotUnimodular {
            det: a.det().to_string(),
        });
    }
    Ok(())
}

/// Iterates `m <- A^T m` in exact integer arithmetic and reports whether
/// the orbit closes within `maxiter` steps.
///
/// Entries grow like the dominant eigenvalue power, so long non-closing
/// orbits produce numbers with thousands of digits; that is the intended
/// behaviour, not a failure mode.
pub fn dual_orbit_test(
    a: &IntMatrix,
    m: &[BigInt],
    maxiter: u64,
) -> Result<DualOrbitResult, Error> {
    validate_matrix(a)?;
    if m.len() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: m.len(),
        });
    }
    if m.iter().all(|e| e.is_zero()) {
        return Err(Error::BadSimParameter(
            "dual orbit of the zero mode is trivially fixed; start from a nonzero mode".into(),
        ));
    }
    if maxiter == 0 {
        return Err(Error::BadSimParameter(
            "iteration budget must be at least 1".into(),
        ));
    }
    let at = a.transpose();
    let mut v = m.to_vec();
    for step in 1..=maxiter {
        v = at.apply(&v);
        if v == m {
            return Ok(DualOrbitResult {
                mode: m.to_vec(),
                status: OrbitStatus::Periodic(step),
            });
        }
    }
    Ok(DualOrbitResult {
        mode: m.to_vec(),
        status: OrbitStatus::NoCycleWithin(maxiter),
    })
}

/// Number of n-periodic points `|det(A^n - E)|`, or `Degenerate` when the
/// determinant vanishes.
pub fn periodic_point_count(a: &IntMatrix, n: u32) -> Result<PeriodicCount, Error> {
    validate_matrix(a)?;
    if n == 0 {
        return Err(Error::BadSimParameter(
            "period must be at least 1".into(),
        ));
    }
    let mut power = IntMatrix::identity(4);
    let mut base = a.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            power = power.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    let d = power.sub(&IntMatrix::identity(4)).det();
    if d.is_zero() {
        Ok(PeriodicCount::Degenerate)
    } else {
        Ok(PeriodicCount::Count(d.abs()))
    }
}

/// Fractional part in [0, 1), exact in the decimal representation.
fn frac(x: &BigFloat) -> BigFloat {
    let unit = BigInt::from(10u32).pow(x.scale());
    let floor = x.mant().div_floor(&unit);
    if floor.is_zero() {
        x.clone()
    } else {
        x.sub(&BigFloat::from_bigint(&floor, x.scale()))
    }
}

#[derive(Default)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Steps between exact-phase re-anchors. Between anchors the phase drifts
/// by at most RESYNC rounding errors (~4e-13 rad), far below the reported
/// precision; anchoring every step would just move the cost into BigFloat.
const RESYNC: u64 = 4096;

/// `|N^{-1} sum_{k=0}^{N-1} exp(2 pi i k d)|` by a rotation recurrence in
/// doubles, re-anchored to the exact fractional part of `k d` every RESYNC
/// steps, with compensated accumulation of both components.
fn circle_average(d: &BigFloat, n: u64) -> f64 {
    let tau = std::f64::consts::TAU;
    let step = frac(d);
    let theta = tau * step.to_f64();
    let (ws, wc) = theta.sin_cos();
    let (mut zc, mut zs) = (1.0f64, 0.0f64);
    let mut re = Kahan::default();
    let mut im = Kahan::default();
    for k in 0..n {
        if k > 0 && k % RESYNC == 0 {
            let anchor = tau * frac(&step.mul_i64(k as i64)).to_f64();
            let (s, c) = anchor.sin_cos();
            zc = c;
            zs = s;
        }
        re.add(zc);
        im.add(zs);
        let next = zc * wc - zs * ws;
        zs = zc * ws + zs * wc;
        zc = next;
    }
    re.sum.hypot(im.sum) / n as f64
}

/// Exact resonance test `(m, gamma) = 0`, evaluated in the number field.
fn exact_resonant(ed: &EigenData, mode: &[i64; 4]) -> bool {
    let f = &ed.field;
    let mut acc = f.zero();
    for (g, &mi) in ed.gamma.iter().zip(mode) {
        if mi != 0 {
            acc = f.add(&acc, &f.scale(g, &BigRational::from_integer(BigInt::from(mi))));
        }
    }
    acc.is_zero()
}

fn mode_report(ed: &EigenData, delta: &BigFloat, samples: u64, mode: [i64; 4]) -> WeylReport {
    let resonant = exact_resonant(ed, &mode);
    // The saturated resonance lattice must agree with the field-side test.
    debug_assert_eq!(resonant, {
        let v: Vec<BigInt> = mode.iter().map(|&x| BigInt::from(x)).collect();
        ed.resonance.lattice.contains(&v)
    });
    let scale = ed.gamma_numeric.iter().map(BigFloat::scale).max().unwrap();
    let mut pairing = BigFloat::zero(scale);
    for (g, &mi) in ed.gamma_numeric.iter().zip(&mode) {
        if mi != 0 {
            pairing = pairing.add(&g.mul_i64(mi));
        }
    }
    let magnitude = circle_average(&delta.mul(&pairing), samples);
    WeylReport {
        mode,
        samples,
        magnitude,
        resonant_predicted: resonant,
    }
}

fn effective_delta(ed: &EigenData, cfg: &SimConfig) -> BigFloat {
    cfg.delta.clone().unwrap_or_else(|| {
        let scale = ed.gamma_numeric.iter().map(BigFloat::scale).max().unwrap();
        BigFloat::from_i64(3, scale)
            .sqrt()
            .sub(&BigFloat::from_i64(1, scale))
    })
}

fn validate_config(cfg: &SimConfig) -> Result<(), Error> {
    if cfg.samples < 1_000 {
        return Err(Error::BadSimParameter(format!(
            "sample count {} is below the floor of 1000",
            cfg.samples
        )));
    }
    if cfg.samples > (1 << 40) {
        return Err(Error::BadSimParameter(format!(
            "sample count {} exceeds the 2^40 budget",
            cfg.samples
        )));
    }
    if cfg.mode_box < 1 {
        return Err(Error::BadSimParameter(format!(
            "mode box bound {} must be at least 1",
            cfg.mode_box
        )));
    }
    Ok(())
}

/// Measured Weyl sum for a single mode under the config's sampling scheme.
pub fn weyl_sum(ed: &EigenData, cfg: &SimConfig, mode: [i64; 4]) -> Result<WeylReport, Error> {
    validate_config(cfg)?;
    if mode == [0; 4] {
        return Err(Error::BadSimParameter(
            "the zero mode carries the constant character and is excluded".into(),
        ));
    }
    Ok(mode_report(ed, &effective_delta(ed, cfg), cfg.samples, mode))
}

fn is_canonical(mode: &[i64; 4]) -> bool {
    mode.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

fn canonicalize(mode: [i64; 4]) -> [i64; 4] {
    if is_canonical(&mode) {
        mode
    } else {
        [-mode[0], -mode[1], -mode[2], -mode[3]]
    }
}

/// Samples `x_k = k delta gamma mod 1` and reports the Weyl sum of every
/// mode in the box `0 < |m|_inf <= mode_box`, in lexicographic mode order.
///
/// Opposite modes carry conjugate sums, so only the representative with
/// positive leading coordinate is summed; its magnitude and resonance tag
/// are shared with its negation. Modes are computed in parallel; the report
/// order is fixed by the enumeration, not by scheduling.
pub fn leaf_equidistribution(ed: &EigenData, cfg: &SimConfig) -> Result<Vec<WeylReport>, Error> {
    validate_config(cfg)?;
    let delta = effective_delta(ed, cfg);
    let b = cfg.mode_box;
    let mut modes = Vec::new();
    for m1 in -b..=b {
        for m2 in -b..=b {
            for m3 in -b..=b {
                for m4 in -b..=b {
                    let m = [m1, m2, m3, m4];
                    if m != [0; 4] {
                        modes.push(m);
                    }
                }
            }
        }
    }
    let canonical: Vec<[i64; 4]> = modes.iter().copied().filter(is_canonical).collect();
    let computed: Vec<WeylReport> = canonical
        .par_iter()
        .map(|&m| mode_report(ed, &delta, cfg.samples, m))
        .collect();
    let index: HashMap<[i64; 4], usize> = canonical
        .iter()
        .enumerate()
        .map(|(i, m)| (*m, i))
        .collect();
    Ok(modes
        .into_iter()
        .map(|m| {
            let rep = &computed[index[&canonicalize(m)]];
            WeylReport {
                mode: m,
                samples: rep.samples,
                magnitude: rep.magnitude,
                resonant_predicted: rep.resonant_predicted,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::eigen_data;

    const DIGITS: u32 = 60;

    fn companion(a: i64, b: i64) -> IntMatrix {
        IntMatrix::from_i64(4, &[0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, -1, -a, -b, -a])
    }

    fn block_rotation() -> IntMatrix {
        IntMatrix::from_i64(4, &[2, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0])
    }

    fn bvec(v: [i64; 4]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn dual_orbit_of_rotation_block_closes() {
        let r = dual_orbit_test(&block_rotation(), &bvec([0, 0, 1, 0]), 100).unwrap();
        assert_eq!(r.status, OrbitStatus::Periodic(4));

        // Same hyperbolic block glued to an order-3 rotation.
        let bd3 = IntMatrix::from_i64(4, &[2, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, -1, 0, 0, 1, -1]);
        let r = dual_orbit_test(&bd3, &bvec([0, 0, 1, 0]), 100).unwrap();
        assert_eq!(r.status, OrbitStatus::Periodic(3));

        let r = dual_orbit_test(&IntMatrix::identity(4), &bvec([1, 0, 0, 0]), 10).unwrap();
        assert_eq!(r.status, OrbitStatus::Periodic(1));
    }

    #[test]
    fn dual_orbit_of_expanding_mode_never_returns() {
        // Entries reach thousands of digits by step 10^4; exact arithmetic
        // must carry the growth without complaint.
        let r = dual_orbit_test(&companion(-3, 3), &bvec([1, 0, 0, 0]), 10_000).unwrap();
        assert_eq!(r.status, OrbitStatus::NoCycleWithin(10_000));
    }

    #[test]
    fn dual_orbit_rejects_trivial_queries() {
        assert!(matches!(
            dual_orbit_test(&block_rotation(), &bvec([0, 0, 0, 0]), 10),
            Err(Error::BadSimParameter(_))
        ));
        assert!(matches!(
            dual_orbit_test(&block_rotation(), &bvec([1, 0, 0, 0]), 0),
            Err(Error::BadSimParameter(_))
        ));
    }

    #[test]
    fn periodic_point_counts_match_char_poly_values() {
        // |det(A - E)| = |chi(1)| and |det(A^2 - E)| = |chi(1) chi(-1)|.
        let ph = companion(-3, 3);
        assert_eq!(
            periodic_point_count(&ph, 1).unwrap(),
            PeriodicCount::Count(BigInt::from(1))
        );
        let anosov = companion(-7, 13);
        assert_eq!(
            periodic_point_count(&anosov, 1).unwrap(),
            PeriodicCount::Count(BigInt::from(1))
        );
        assert_eq!(
            periodic_point_count(&anosov, 2).unwrap(),
            PeriodicCount::Count(BigInt::from(29))
        );
        // The rotation block has R^4 = E, so det(A^4 - E) = 0.
        assert_eq!(
            periodic_point_count(&block_rotation(), 4).unwrap(),
            PeriodicCount::Degenerate
        );
        assert_eq!(
            periodic_point_count(&IntMatrix::identity(4), 1).unwrap(),
            PeriodicCount::Degenerate
        );
    }

    fn close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() < tol,
            "got {actual:e}, expected {expected:e}"
        );
    }

    #[test]
    fn weyl_magnitudes_match_geometric_series_closed_form() {
        // For a single mode the sampled sum is geometric, so
        // |S_N| = |sin(pi N d) / (N sin(pi d))| exactly; the expected values
        // are that closed form at 60 digits.
        let ed = eigen_data(&companion(-3, 3), DIGITS).unwrap();
        let cfg = SimConfig {
            samples: 4096,
            ..SimConfig::default()
        };
        close(
            weyl_sum(&ed, &cfg, [0, 1, 0, 0]).unwrap().magnitude,
            8.4633571116303896e-5,
            1e-9,
        );
        close(
            weyl_sum(&ed, &cfg, [1, 0, 0, 0]).unwrap().magnitude,
            3.2669974291176571e-4,
            1e-9,
        );
        let cfg = SimConfig {
            samples: 10_000,
            ..SimConfig::default()
        };
        close(
            weyl_sum(&ed, &cfg, [1, -1, 2, 0]).unwrap().magnitude,
            4.1387909677079063e-4,
            1e-9,
        );

        let ed = eigen_data(&block_rotation(), DIGITS).unwrap();
        let cfg = SimConfig {
            samples: 4096,
            ..SimConfig::default()
        };
        close(
            weyl_sum(&ed, &cfg, [1, 0, 0, 0]).unwrap().magnitude,
            3.2669974291176571e-4,
            1e-9,
        );
        close(
            weyl_sum(&ed, &cfg, [1, 1, 0, 0]).unwrap().magnitude,
            4.0171601668300649e-4,
            1e-9,
        );
    }

    #[test]
    fn long_run_stays_on_the_closed_form() {
        let ed = eigen_data(&companion(-3, 3), DIGITS).unwrap();
        let cfg = SimConfig::default();
        close(
            weyl_sum(&ed, &cfg, [0, 1, 0, 0]).unwrap().magnitude,
            1.0257850921061544e-6,
            1e-9,
        );
    }

    #[test]
    fn resonant_mode_sums_to_one() {
        // (0,0,1,0) pairs to zero with the leaf of the rotation block, so
        // the sampled character is constant.
        let ed = eigen_data(&block_rotation(), DIGITS).unwrap();
        let r = weyl_sum(&ed, &SimConfig::default(), [0, 0, 1, 0]).unwrap();
        assert!(r.resonant_predicted);
        assert!((r.magnitude - 1.0).abs() < 1e-12);
    }

    #[test]
    fn box_report_is_ordered_deduplicated_and_consistent() {
        let ed = eigen_data(&block_rotation(), DIGITS).unwrap();
        let cfg = SimConfig {
            samples: 4096,
            mode_box: 2,
            ..SimConfig::default()
        };
        let reports = leaf_equidistribution(&ed, &cfg).unwrap();
        assert_eq!(reports.len(), 5usize.pow(4) - 1);
        assert_eq!(reports[0].mode, [-2, -2, -2, -2]);

        let resonant = reports.iter().filter(|r| r.resonant_predicted).count();
        // Resonant modes are exactly those with m1 = m2 = 0.
        assert_eq!(resonant, 5 * 5 - 1);
        for r in &reports {
            assert!(r.confirms(&cfg), "mode {:?} at {:e}", r.mode, r.magnitude);
            let twin = reports
                .iter()
                .find(|s| s.mode == [-r.mode[0], -r.mode[1], -r.mode[2], -r.mode[3]])
                .unwrap();
            assert_eq!(r.magnitude.to_bits(), twin.magnitude.to_bits());
            assert_eq!(r.resonant_predicted, twin.resonant_predicted);
        }
    }

    #[test]
    fn aliased_step_confounds_a_nonresonant_mode() {
        // The step must avoid the leaf's own field: with delta = (sqrt(5)-1)/2
        // and gamma = (1, (sqrt(5)-1)/2, 0, 0), the mode (1,1,0,0) gives
        // delta * (m, gamma) = delta * (1 + delta) = 1 exactly, so every
        // sample lands on the same phase and the sum reads as resonant even
        // though (m, gamma) != 0. This is why the default step is sqrt(3)-1.
        let ed = eigen_data(&block_rotation(), DIGITS).unwrap();
        let golden = BigFloat::from_i64(5, DIGITS)
            .sqrt()
            .sub(&BigFloat::from_i64(1, DIGITS))
            .half();
        let cfg = SimConfig {
            samples: 4096,
            delta: Some(golden),
            ..SimConfig::default()
        };
        let r = weyl_sum(&ed, &cfg, [1, 1, 0, 0]).unwrap();
        assert!(!r.resonant_predicted);
        assert!(r.magnitude > 0.999_999);
    }

    #[test]
    fn config_validation_rejects_degenerate_runs() {
        let ed = eigen_data(&block_rotation(), DIGITS).unwrap();
        let starved = SimConfig {
            samples: 999,
            ..SimConfig::default()
        };
        assert!(matches!(
            weyl_sum(&ed, &starved, [1, 0, 0, 0]),
            Err(Error::BadSimParameter(_))
        ));
        let flat = SimConfig {
            mode_box: 0,
            ..SimConfig::default()
        };
        assert!(matches!(
            leaf_equidistribution(&ed, &flat),
            Err(Error::BadSimParameter(_))
        ));
        assert!(matches!(
            weyl_sum(&ed, &SimConfig::default(), [0, 0, 0, 0]),
            Err(Error::BadSimParameter(_))
        ));
    }
}
