use crate::error::{Error, Result};

/// Hazard and cumulative hazard of one unit at the evaluation instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitRate {
    pub hazard: f64,
    pub cumulative: f64,
}

impl UnitRate {
    pub fn new(hazard: f64, cumulative: f64) -> Self {
        UnitRate { hazard, cumulative }
    }
}

// ln(1 - exp(-h)) without cancellation at either end.
fn ln_failure_prob(cumulative: f64) -> f64 {
    if cumulative > std::f64::consts::LN_2 {
        (-(-cumulative).exp()).ln_1p()
    } else {
        (-(-cumulative).exp_m1()).ln()
    }
}

/// Hazard of a 1-out-of-k active-parallel group.
///
/// With `R_i = exp(-H_i)`, `F_i = 1 - R_i` and `f_i = h_i R_i`, the group's
/// density is `sum_i f_i prod_{j != i} F_j` and its survival `1 - prod_i F_i`;
/// the ratio is returned. A single unit returns its own hazard unchanged.
pub fn compose_parallel(units: &[UnitRate]) -> Result<f64> {
    match units {
        [] => Err(Error::Composition("no active units to compose".into())),
        [one] => Ok(one.hazard),
        _ => {
            let ln_f: Vec<f64> = units.iter().map(|u| ln_failure_prob(u.cumulative)).collect();
            let ln_all: f64 = ln_f.iter().sum();
            let survival = -ln_all.exp_m1();
            if survival.is_nan() || survival <= 0.0 {
                return Err(Error::Composition("all units in the group have failed".into()));
            }
            let density: f64 = units
                .iter()
                .enumerate()
                .map(|(i, u)| {
                    if u.hazard == 0.0 {
                        return 0.0;
                    }
                    let ln_others: f64 = ln_f.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v).sum();
                    u.hazard * (ln_others - u.cumulative).exp()
                })
                .sum();
            Ok(density / survival)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair_closed_form(lambda: f64, t: f64) -> f64 {
        let e = (-lambda * t).exp();
        2.0 * lambda * (1.0 - e) / (2.0 - e)
    }

    #[test]
    fn single_unit_is_identity() {
        let u = UnitRate::new(0.37, 12.0);
        assert_eq!(compose_parallel(&[u]).unwrap(), 0.37);
    }

    #[test]
    fn constant_pair_examples() {
        let t = 1.5f64.ln();
        let u = UnitRate::new(1.0, t);
        assert!((compose_parallel(&[u, u]).unwrap() - 0.5).abs() < 1e-15);
        let u = UnitRate::new(1.0, 10.0);
        let h = compose_parallel(&[u, u]).unwrap();
        assert!((h - pair_closed_form(1.0, 10.0)).abs() < 1e-15);
        assert!((h - 0.99998).abs() < 1e-5);
    }

    #[test]
    fn at_origin_the_pair_cannot_fail() {
        let u = UnitRate::new(35.0, 0.0);
        assert_eq!(compose_parallel(&[u, u]).unwrap(), 0.0);
    }

    #[test]
    fn exhausted_group_is_an_error() {
        let u = UnitRate::new(1.0, f64::INFINITY);
        assert!(matches!(compose_parallel(&[u, u]), Err(Error::Composition(_))));
        assert!(compose_parallel(&[]).is_err());
    }
}
