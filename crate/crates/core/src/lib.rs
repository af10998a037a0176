//! Exact computation of the idempotents of finite commutative rings: residue
//! rings `Z_m`, polynomial quotients `Z_m[x]/(q)`, and group rings of finite
//! abelian groups over either.
//!
//! Idempotents of `R/N` for a nilpotent ideal `N` lift uniquely to `R`. Along
//! a suitable chain of ideals the lift is a plain power `f^(s_1 ... s_{k-1})`,
//! and over `Z_m` the pieces for each prime power of `m` are glued by the CRT.
//!
//! ```
//! use idemlift::prelude::*;
//!
//! let r = GroupRing::new(ResidueRing::new(125)?, AbelianGroup::new(&[7])?);
//! let chain = chain_for_prime_power(&r)?;
//! let f = parse_element(&r, "3 + 3g + 3g^2 + 3g^3 + 3g^4 + 3g^5 + 3g^6")?;
//! let lifted = chain_lift(&r, &f, &chain)?.lifted;
//! assert_eq!(r.coefficients(&lifted), vec![18; 7]);
//! # Ok::<(), idemlift::Error>(())
//! ```

pub mod arith;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod expr;
pub mod group;
pub mod group_ring;
pub mod lifting;
pub mod poly;
pub mod quotient;
pub mod residue;
pub mod ring;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::arith::{factorize, PrimePowerFactorization};
    pub use crate::catalog::{
        brute_force_idempotents, crt_combine, crt_combine_one, crt_combine_powerform_one, crt_terms,
        cyclic_base_idempotents, enumerate_idempotents, frobenius_split, hat_family, poly_crt_combine,
        poly_crt_idempotents, power_form, BaseProvider, CatalogOptions, CombineForm, IdempotentCatalog,
        IdempotentFamily, Provenance,
    };
    pub use crate::error::{Error, Result};
    pub use crate::expr::{parse_element, AnyRing, RingExpression};
    pub use crate::group::{all_subgroups, frobenius_orbit_count, AbelianGroup, Subgroup};
    pub use crate::group_ring::{GroupRing, GroupRingElement};
    pub use crate::lifting::{
        binomial_lift, chain_for_group_ring, chain_for_nilpotent_ideal, chain_for_prime_power, chain_lift,
        nilpotency_index, power_lift, verify_family, CncChain, LiftMode, LiftReport,
    };
    pub use crate::poly::{berlekamp_factor, Polynomial};
    pub use crate::quotient::{gaussian_idempotents, PolyAlgebra, PolyQuotientRing};
    pub use crate::residue::ResidueRing;
    pub use crate::ring::{CommutativeRing, Exponent, NamedGenerators, ZmAlgebra};
}
