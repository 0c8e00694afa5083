//! Maps a claim id plus run settings onto the matching core verifier.

use qfun::qderiv::{make_grid, N_MAX_CERT};
use qfun::qroots::{digamma_zero_with, DEFAULT_ROOT_TOL};
use qfun::theorems::{self, beta_star, ZERO_MARGIN};
use qfun::{ClaimId, OrderRange, QParam, RatioSpec, Result, Truncation, VerifyOptions, VerifyReport};

use crate::config::{Command, RunConfig};

/// The q values used when none are given.
pub const SWEEP_Q: [f64; 5] = [0.2, 0.5, 0.8, 2.0, 5.0];

const DEFAULT_INDEX_MAX: usize = 20;
const DEFAULT_PHI_MAX: usize = 200;
const SUPERADD_SIDE: usize = 20;

/// Report parameters that are inputs and must be echoed in a rerun command.
pub const INPUT_PARAMS: [&str; 5] = ["a", "b", "alpha", "beta", "x1"];

pub fn q_param(cfg: &RunConfig, q: f64) -> Result<QParam> {
    if cfg.allow_near_one {
        QParam::with_near_one(q)
    } else {
        QParam::new(q)
    }
}

pub fn truncation(cfg: &RunConfig) -> Result<Truncation> {
    let t = Truncation::default().with_rel_tol(cfg.rel_tol)?;
    if cfg.allow_near_one {
        t.with_max_terms(100_000_000)
    } else {
        Ok(t)
    }
}

fn options(cfg: &RunConfig) -> Result<VerifyOptions> {
    Ok(VerifyOptions {
        tol: cfg.tol,
        trunc: truncation(cfg)?,
    })
}

fn orders(cfg: &RunConfig, default_max: usize) -> Result<OrderRange> {
    match cfg.orders {
        Some(o) => Ok(o),
        None => OrderRange::up_to(cfg.n_max.unwrap_or(default_max)),
    }
}

/// The x grid, or the single point --x.
fn grid_on(cfg: &RunConfig, lo: f64, hi: f64) -> Result<Vec<f64>> {
    match cfg.x {
        Some(x) => Ok(vec![x]),
        None => make_grid(lo, hi, cfg.points, cfg.spacing),
    }
}

fn ratio_spec(cfg: &RunConfig) -> Result<RatioSpec> {
    RatioSpec::new(
        cfg.a.unwrap_or(1.0),
        cfg.b.unwrap_or(2.0),
        cfg.alpha.unwrap_or(2.0),
        cfg.beta.unwrap_or(1.0),
    )
}

fn x0(p: &QParam, opts: &VerifyOptions) -> Result<f64> {
    Ok(digamma_zero_with(p, DEFAULT_ROOT_TOL, &opts.trunc)?.x0)
}

/// Runs one claim at one q.
pub fn run_claim(claim: ClaimId, q: f64, cfg: &RunConfig) -> Result<VerifyReport> {
    let p = q_param(cfg, q)?;
    let opts = options(cfg)?;
    let (lo, hi) = (cfg.x_min, cfg.x_max);
    match claim {
        ClaimId::RatioLcm => theorems::verify_theorem_ratio_lcm(
            &ratio_spec(cfg)?,
            &p,
            &grid_on(cfg, lo, hi)?,
            orders(cfg, N_MAX_CERT)?,
            &opts,
        ),
        ClaimId::Ineq555 => theorems::verify_ineq_555(
            &ratio_spec(cfg)?,
            &p,
            cfg.x1.unwrap_or(1.0),
            &grid_on(cfg, lo, hi)?,
            &opts,
        ),
        ClaimId::Ineq666 => theorems::verify_ineq_666(&p, orders(cfg, DEFAULT_INDEX_MAX)?, &opts),
        ClaimId::GBetaLcm => {
            let beta = cfg.beta.map_or_else(|| beta_star(&p), Ok)?;
            theorems::verify_g_beta_lcm(&p, beta, &grid_on(cfg, lo, hi)?, orders(cfg, N_MAX_CERT)?, &opts)
        }
        ClaimId::PhiCoeff => {
            let beta = cfg.beta.map_or_else(|| beta_star(&p), Ok)?;
            theorems::verify_phi_coefficients(&p, beta, orders(cfg, DEFAULT_PHI_MAX)?, &opts)
        }
        ClaimId::InvPsiLcm => {
            let start = lo.max(x0(&p, &opts)? + 0.1);
            theorems::verify_inv_digamma_lcm(&p, &grid_on(cfg, start, hi)?, orders(cfg, N_MAX_CERT)?, &opts)
        }
        ClaimId::Ineq1 => {
            let points = match (cfg.x, cfg.y) {
                (Some(x), Some(y)) => vec![(x, y)],
                _ => {
                    let g = match cfg.x {
                        Some(x) => vec![x],
                        None => make_grid(lo.max(x0(&p, &opts)? + ZERO_MARGIN), hi, cfg.points, cfg.spacing)?,
                    };
                    g.iter().flat_map(|&x| g.iter().map(move |&y| (x, y))).collect()
                }
            };
            theorems::verify_ineq_1(&p, cfg.a.unwrap_or(2.0), &points, &opts)
        }
        ClaimId::Ineq010 => theorems::verify_ineq_010(&p, cfg.a.unwrap_or(2.0), &grid_on(cfg, lo, hi)?, &opts),
        ClaimId::RemarkHarmonic => theorems::verify_remark_ineq(&p, orders(cfg, DEFAULT_INDEX_MAX)?, &opts),
        ClaimId::GammaLcmSuperadd => {
            let ord = orders(cfg, N_MAX_CERT)?;
            match (cfg.x, cfg.y) {
                (Some(x), Some(y)) => theorems::verify_gamma_lcm_and_superadd_pairs(&p, &[(x, y)], &[], ord, &opts),
                (Some(x), None) => theorems::verify_gamma_lcm_and_superadd(&p, &[], &[x], ord, &opts),
                _ => {
                    let top = hi.min(x0(&p, &opts)? - 0.05);
                    let lcm = make_grid(lo, top, cfg.points, cfg.spacing)?;
                    let side: Vec<f64> = (1..=SUPERADD_SIDE)
                        .map(|i| (i as f64 - 0.5) / SUPERADD_SIDE as f64)
                        .collect();
                    theorems::verify_gamma_lcm_and_superadd(&p, &side, &lcm, ord, &opts)
                }
            }
        }
        ClaimId::PsiDuplication => theorems::verify_psi_duplication(&p, &grid_on(cfg, lo, hi)?, &opts),
    }
}

/// The (claim, q) pairs a verify or all run covers, ordered by claim then q.
pub fn plan(cfg: &RunConfig) -> Result<Vec<(ClaimId, f64)>> {
    let claims = if cfg.claims.is_empty() {
        ClaimId::ALL.to_vec()
    } else {
        let mut c = cfg.claims.clone();
        c.sort();
        c.dedup();
        c
    };
    let explicit = !cfg.qs.is_empty();
    let qs: Vec<f64> = if explicit { cfg.qs.clone() } else { SWEEP_Q.to_vec() };
    let mut out = Vec::new();
    for claim in claims {
        for &q in &qs {
            let regime = q_param(cfg, q)?.regime();
            // under verify, an explicit q outside the claim's regime reaches the verifier and errors
            if (explicit && cfg.command == Command::Verify) || claim.supports(regime) {
                out.push((claim, q));
            }
        }
    }
    Ok(out)
}
