//! Fast invariant suite behind the `check` subcommand.
//!
//! Four checks cover the load-bearing numerics: walk unitarity, the identity
//! of the two generated-entropy routes, Gibbs self-consistency of the
//! thermodynamic frame, and the closed-form asymptotic entropy. The whole
//! suite runs in well under a minute.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::mat2;
use crate::reduced::reduce;
use crate::thermo::{alpha_of, relative_entropy, sgen_asymptotic, ThermoContext};
use crate::walk::{evolve, ChiralitySpec, CoinParams, InitialStateSpec, StateFamily};

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    /// Negative-control hook: flip the β sign in every thermodynamic frame
    /// the checks build. The route-identity and self-consistency checks must
    /// then fail.
    pub corrupt_beta_sign: bool,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn from_bound(name: &'static str, measured: f64, bound: f64) -> Self {
        Self {
            name,
            passed: measured <= bound,
            detail: format!("max deviation {measured:.3e} (bound {bound:.0e})"),
        }
    }
}

fn context(theta: f64, alpha: f64, options: &CheckOptions) -> ThermoContext {
    let mut ctx = ThermoContext::new(theta, 1.0, alpha).expect("check parameters are in band");
    if options.corrupt_beta_sign {
        ctx.corrupt_beta_sign();
    }
    ctx
}

/// Run every check, returning one outcome per check in a fixed order.
pub fn run_checks(options: &CheckOptions) -> Vec<CheckOutcome> {
    vec![
        unitarity(),
        route_identity(options),
        gibbs_self_consistency(options),
        asymptotic_formula(),
    ]
}

pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}

fn unitarity() -> CheckOutcome {
    let coin = CoinParams::hadamard();
    let mut max_drift = 0.0f64;
    for family in [
        StateFamily::Gaussian { sigma: 5.0 },
        StateFamily::Uniform { count: 51 },
    ] {
        let state = InitialStateSpec::new(family, ChiralitySpec::up())
            .build()
            .expect("check states are valid");
        evolve(&state, &coin, 300, |_, s| {
            max_drift = max_drift.max((s.norm() - 1.0).abs());
        });
    }
    CheckOutcome::from_bound("unitarity", max_drift, 1e-12)
}

fn route_identity(options: &CheckOptions) -> CheckOutcome {
    let theta = FRAC_PI_4;
    let chirality = ChiralitySpec::up();
    let ctx = context(theta, alpha_of(theta, &chirality), options);
    let initial = InitialStateSpec::new(StateFamily::Gaussian { sigma: 5.0 }, chirality)
        .build()
        .expect("check states are valid");
    let rho_0 = reduce(&initial);
    let e_0 = ctx.internal_energy(&rho_0);
    let d_0 = relative_entropy(&rho_0, ctx.rho_eq()).expect("rho_eq is full rank");
    let mut max_dev = 0.0f64;
    evolve(
        &initial,
        &CoinParams::new(theta).expect("theta is valid"),
        150,
        |_, state| {
            let rho = reduce(state);
            let balance =
                ctx.sgen_balance(rho.von_neumann_entropy(), ctx.internal_energy(&rho) - e_0);
            let relent = d_0 - relative_entropy(&rho, ctx.rho_eq()).expect("full rank");
            max_dev = max_dev.max((balance - relent).abs());
        },
    );
    CheckOutcome::from_bound("sgen-route-identity", max_dev, 1e-10)
}

fn gibbs_self_consistency(options: &CheckOptions) -> CheckOutcome {
    let mut max_dev = 0.0f64;
    for i in 1..8 {
        let theta = FRAC_PI_2 * i as f64 / 8.0;
        for j in 1..12 {
            let alpha = PI * j as f64 / 12.0;
            let ctx = context(theta, alpha, options);
            let dev = mat2::max_entry_dist(ctx.rho_eq().entries(), ctx.gibbs_state().entries());
            max_dev = max_dev.max(dev);
        }
    }
    CheckOutcome::from_bound("gibbs-self-consistency", max_dev, 1e-12)
}

fn asymptotic_formula() -> CheckOutcome {
    let mut max_dev = 0.0f64;
    for k in 0..100 {
        let alpha = 1e-3 + (PI - 2e-3) * (k as f64 + 0.5) / 100.0;
        let ctx = ThermoContext::new(FRAC_PI_4, 1.0, alpha).expect("alpha is in band");
        let closed = sgen_asymptotic(alpha).expect("alpha is in band");
        max_dev = max_dev.max((closed - ctx.rho_eq().von_neumann_entropy()).abs());
    }
    CheckOutcome::from_bound("asymptotic-formula", max_dev, 1e-12)
}
