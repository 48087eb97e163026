#![allow(dead_code)]

use dirac_barrier::{PotentialConfig, Zone};

/// Resonance energies of the reference configuration, to ten decimals.
pub const LOWER_KLEIN: [f64; 7] = [
    1.1913921248,
    1.4523858967,
    1.7708714661,
    2.0643517404,
    2.2185949080,
    2.4744005714,
    2.7966547987,
];
pub const HIGHER_KLEIN: [f64; 4] = [5.1824247690, 5.5378483868, 6.1348174089, 6.7590893689];
pub const CONVENTIONAL: [f64; 4] = [7.2022544582, 7.7033320458, 8.2103665633, 8.7007206203];
pub const ABOVE_BARRIER: [f64; 8] = [
    9.1265979020,
    9.4112532302,
    9.4794638424,
    9.7910774141,
    10.1475989665,
    10.3256144827,
    10.5446769142,
    10.9095057090,
];

pub fn table() -> [(Zone, &'static [f64]); 4] {
    [
        (Zone::LowerKlein, &LOWER_KLEIN),
        (Zone::HigherKlein, &HIGHER_KLEIN),
        (Zone::Conventional, &CONVENTIONAL),
        (Zone::AboveBarrier, &ABOVE_BARRIER),
    ]
}

pub fn all_table_energies() -> Vec<f64> {
    table().iter().flat_map(|(_, e)| e.iter().copied()).collect()
}

pub fn reference() -> PotentialConfig {
    PotentialConfig::reference()
}

/// Half-maximum width measured on a uniform grid of `points` energies in
/// `(center - half_window, center + half_window)` using `t2`, walking out
/// from the sample nearest the peak and interpolating linearly.
pub fn grid_fwhm<F: Fn(f64) -> f64>(t2: F, center: f64, half_window: f64, points: usize) -> Option<f64> {
    let lo = center - half_window;
    let step = 2.0 * half_window / (points - 1) as f64;
    let xs: Vec<f64> = (0..points).map(|i| lo + step * i as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| t2(x)).collect();
    let peak = ys
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)?;
    let crossing = |dir: isize| -> Option<f64> {
        let mut i = peak as isize;
        loop {
            let j = i + dir;
            if j < 0 || j as usize >= points {
                return None;
            }
            let (yi, yj) = (ys[i as usize], ys[j as usize]);
            if yj < 0.5 {
                let (xi, xj) = (xs[i as usize], xs[j as usize]);
                return Some(xi + (0.5 - yi) * (xj - xi) / (yj - yi));
            }
            i = j;
        }
    };
    Some(crossing(1)? - crossing(-1)?)
}
