//! Order arithmetic for groups of Lie type, Abelian-Sylow tables and `Qd(p)` involvement
//! verdicts for the finite simple groups.

pub mod classify;
pub mod crosscheck;
pub mod cyclotomic;
pub mod identities;
pub mod orders;
pub mod selfcheck;
pub mod sporadic;

pub use classify::{
    exceptional_weyl_exponent, qdp_verdict, sylow_abelian_verdict, ClassifierFamily, ClassifierQuery,
    ClassifierVerdict, MinimalWitness,
};
pub use crosscheck::{recipe_for, verdict_crosscheck, CrossCheck};
pub use cyclotomic::{cyclotomic_exponents, cyclotomic_value, weyl_part_exponent};
pub use identities::{p_part_identity_check, run_grid, GridReport, Identity, IdentityParams};
pub use orders::{alternating_order, e_p, group_order, order_shape, p_adic_valuation, p_part, OrderFamily};
pub use selfcheck::{selfcheck, sweep, verdict_invariants_hold, SweepReport};
