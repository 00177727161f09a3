use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::budget::{check_budget, saturating_pow};
use crate::groups::GroupTable;
use crate::structures::general_cube;

use super::product::fill_cube;
use super::{odometer, product_cost, GowersError};

/// A complex number with rational parts. Arithmetic panics on `i128`
/// overflow, so inputs should have small numerators and denominators.
pub type GaussianRational = Complex<Ratio<i128>>;

fn check_system(g: &GroupTable, n: usize, values: &[Vec<GaussianRational>]) -> Result<(), GowersError> {
    if n >= 32 {
        return Err(GowersError::InvalidParameter(format!("dimension {n} is too large")));
    }
    if values.len() != 1 << n {
        return Err(GowersError::LengthMismatch { expected: 1 << n, found: values.len() });
    }
    if let Some(f) = values.iter().find(|f| f.len() != g.order()) {
        return Err(GowersError::LengthMismatch { expected: g.order(), found: f.len() });
    }
    Ok(())
}

fn signed(values: &[Vec<GaussianRational>]) -> Vec<Vec<GaussianRational>> {
    values
        .iter()
        .enumerate()
        .map(|(v, f)| if v.count_ones() % 2 == 1 { f.iter().map(Complex::conj).collect() } else { f.clone() })
        .collect()
}

fn product_at(tables: &[Vec<GaussianRational>], cube: &[usize]) -> GaussianRational {
    tables.iter().zip(cube).fold(GaussianRational::one(), |acc, (t, &x)| acc * t[x])
}

/// The cubic product in exact arithmetic, summing over `(a_0, …, a_n)`.
pub fn cubic_product_exact(
    g: &GroupTable,
    n: usize,
    values: &[Vec<GaussianRational>],
    budget: u64,
) -> Result<GaussianRational, GowersError> {
    check_system(g, n, values)?;
    let m = g.order();
    check_budget(product_cost(m, n), budget)?;
    let tables = signed(values);
    let mut a = vec![0usize; n + 1];
    let mut cube = vec![0usize; 1 << n];
    let mut sum = GaussianRational::zero();
    loop {
        fill_cube(g, &a, &mut cube);
        sum += product_at(&tables, &cube);
        if !odometer(&mut a, m) {
            break;
        }
    }
    Ok(sum / Ratio::from_integer(m.pow(n as u32 + 1) as i128))
}

/// The cubic product in exact arithmetic over the `2n` parameters
/// `a_{i,j}`, with the cube `c(v) = a_{1,v_1} ⋯ a_{n,v_n}`.
pub fn cubic_product_general_exact(
    g: &GroupTable,
    n: usize,
    values: &[Vec<GaussianRational>],
    budget: u64,
) -> Result<GaussianRational, GowersError> {
    check_system(g, n, values)?;
    let m = g.order();
    check_budget(saturating_pow(m, 2 * n).saturating_mul(1u128 << n), budget)?;
    let tables = signed(values);
    let mut a = vec![0usize; 2 * n];
    let mut sum = GaussianRational::zero();
    loop {
        let system: Vec<[usize; 2]> = a.chunks(2).map(|p| [p[0], p[1]]).collect();
        sum += product_at(&tables, &general_cube(g, &system));
        if !odometer(&mut a, m) {
            break;
        }
    }
    Ok(sum / Ratio::from_integer(m.pow(2 * n as u32) as i128))
}
