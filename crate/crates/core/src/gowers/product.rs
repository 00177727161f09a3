use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{check_budget, saturating_pow};
use crate::groups::GroupTable;

use super::{odometer, FunctionSystem, GowersError, GroupFunction};

/// Relative tolerance, in units of `max|f|^{2^n}`, for the imaginary part
/// and negative real part of a self cubic product.
pub const SELF_PRODUCT_TOLERANCE: f64 = 1e-12;

/// Compensated (Neumaier) sum of complex numbers.
#[derive(Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let t = acc.0 + x;
    if acc.0.abs() >= x.abs() {
        acc.1 += (acc.0 - t) + x;
    } else {
        acc.1 += (x - t) + acc.0;
    }
    acc.0 = t;
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// Planned operation count `|G|^{n+1} · 2^n` of an exact cubic product.
pub fn product_cost(order: usize, n: usize) -> u128 {
    saturating_pow(order, n + 1).saturating_mul(1u128 << n.min(127))
}

/// Per-vertex value tables with the conjugation at odd height applied.
pub(crate) fn signed_tables(system: &FunctionSystem) -> Vec<Vec<Complex64>> {
    system
        .functions()
        .iter()
        .enumerate()
        .map(|(v, f)| {
            if v.count_ones() % 2 == 1 {
                f.values().iter().map(Complex64::conj).collect()
            } else {
                f.values().to_vec()
            }
        })
        .collect()
}

/// Fills `cube` with `a_0 a_1^{v_1} ⋯ a_n^{v_n}` for `a = (a_0, …, a_n)`.
pub(crate) fn fill_cube(g: &GroupTable, a: &[usize], cube: &mut [usize]) {
    cube[0] = a[0];
    for v in 1..cube.len() {
        let hb = (usize::BITS - 1 - v.leading_zeros()) as usize;
        cube[v] = g.mul(cube[v & !(1 << hb)], a[hb + 1]);
    }
}

pub(crate) fn cube_product(tables: &[Vec<Complex64>], cube: &[usize]) -> Complex64 {
    tables.iter().zip(cube).fold(Complex64::new(1.0, 0.0), |acc, (t, &x)| acc * t[x])
}

/// The cubic product of a function system, by exact enumeration of
/// `(a_0, …, a_n)`.
///
/// The sum is split over `a_0`; each part is accumulated with compensated
/// summation and the parts are added in index order, so the result does
/// not depend on the thread count.
pub fn cubic_product(system: &FunctionSystem, budget: u64) -> Result<Complex64, GowersError> {
    let g = system.group();
    let n = system.n();
    let m = g.order();
    check_budget(product_cost(m, n), budget)?;
    let tables = signed_tables(system);
    let parts: Vec<Complex64> = (0..m)
        .into_par_iter()
        .map(|a0| {
            let mut a = vec![0usize; n + 1];
            a[0] = a0;
            let mut cube = vec![0usize; 1 << n];
            let mut sum = CompensatedSum::default();
            loop {
                fill_cube(g, &a, &mut cube);
                sum.add(cube_product(&tables, &cube));
                if !odometer(&mut a[1..], m) {
                    break;
                }
            }
            sum.value()
        })
        .collect();
    let mut total = CompensatedSum::default();
    for p in parts {
        total.add(p);
    }
    Ok(total.value() / saturating_pow(m, n + 1) as f64)
}

/// A uniformity norm together with the self cubic product it came from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormValue {
    pub n: usize,
    pub inner_re: f64,
    pub inner_im: f64,
    pub norm: f64,
    pub operations: u128,
}

/// `‖f‖_{U_n} = ([f]_n)^{1/2^n}`.
///
/// The self product must be a nonnegative real up to
/// [`SELF_PRODUCT_TOLERANCE`]; a small negative real part is clamped to 0.
pub fn gowers_norm(f: &GroupFunction, n: usize, budget: u64) -> Result<NormValue, GowersError> {
    gowers_norm_with_tolerance(f, n, SELF_PRODUCT_TOLERANCE, budget)
}

/// [`gowers_norm`] with a caller-chosen relative tolerance on the self
/// product.
pub fn gowers_norm_with_tolerance(
    f: &GroupFunction,
    n: usize,
    tolerance: f64,
    budget: u64,
) -> Result<NormValue, GowersError> {
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(GowersError::InvalidParameter(format!("tolerance {tolerance} outside (0, 1)")));
    }
    if n == 0 {
        return Err(GowersError::InvalidParameter("uniformity norms need n >= 1".into()));
    }
    let system = FunctionSystem::uniform(f, n)?;
    let inner = cubic_product(&system, budget)?;
    let scale = f.max_abs().powi(1 << n);
    let tol = tolerance * scale;
    if inner.im.abs() > tol || inner.re < -tol {
        return Err(GowersError::NotNonnegative { re: inner.re, im: inner.im });
    }
    Ok(NormValue {
        n,
        inner_re: inner.re,
        inner_im: inner.im,
        norm: inner.re.max(0.0).powf(1.0 / (1u64 << n) as f64),
        operations: product_cost(f.group().order(), n),
    })
}

/// `(f ⋆ g)(x) = (1/|G|) Σ_y f(xy) conj(g(y))`.
pub fn star(f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction, GowersError> {
    if !f.same_group(g) {
        return Err(GowersError::MismatchedGroups);
    }
    let group = f.group();
    let m = group.order() as f64;
    GroupFunction::from_fn(f.group_arc().clone(), |x| {
        let mut sum = CompensatedSum::default();
        for y in 0..group.order() {
            sum.add(f.value(group.mul(x, y)) * g.value(y).conj());
        }
        sum.value() / m
    })
}

/// `‖f‖_2 = ((1/|G|) Σ |f(x)|²)^{1/2}`.
pub fn l2_norm(f: &GroupFunction) -> f64 {
    let mut sum = CompensatedSum::default();
    for z in f.values() {
        sum.add(Complex64::new(z.norm_sqr(), 0.0));
    }
    (sum.value().re / f.values().len() as f64).sqrt()
}
