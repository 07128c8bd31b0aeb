//! Exact structure constants for algebras of conjugacy classes of partial
//! elements of `S_n` and of wreath products `F wr S_n`.
//!
//! A partial element is a pair `(lambda, h)` of a finite set of points and a
//! group element acting inside it. Conjugacy classes of partial elements span
//! a commutative associative algebra; this crate builds its truncations
//! `A_{<=N}` by enumeration, multiplies in them with exact integers, and
//! checks the identities that tie them to the centers of the group algebras
//! of `G_l`:
//!
//! * [`group`], [`wreath`], [`label`]: finite groups from Cayley tables,
//!   wreath-product arithmetic and canonical class labels.
//! * [`partial`]: partial elements, the structure constants `P` and the
//!   projections between truncations.
//! * [`center`]: class sums of `G_l` and their constants `S`.
//! * [`correspondence`]: the coefficients `xi`, the triangular system that
//!   recovers `P` from `S`, and the injective map `phi` into the product of
//!   centers with its triangular inverse.
//! * [`audit`]: a finite-level admissibility audit that tells the
//!   even-signed permutation family apart from the admissible ones.
//! * [`verify`], [`export`]: deterministic sweeps and table output.
//!
//! ```
//! use ikalg::{Context, Family, IkVector, OmegaLabel, Int};
//!
//! let ctx = Context::with_default_budget(Family::symmetric()).unwrap();
//! let t: OmegaLabel = "2:[2]".parse().unwrap();
//! let sq = ctx.ik_product(&IkVector::basis(4, t.clone()), &IkVector::basis(4, t)).unwrap();
//! assert_eq!(sq.get(&"3:[3]".parse().unwrap()), Int::from(3i64));
//! ```

pub mod audit;
pub mod center;
pub mod context;
pub mod correspondence;
pub mod error;
pub mod exec;
pub mod export;
pub mod family;
pub mod group;
pub mod int;
pub mod label;
pub mod partial;
pub mod vector;
pub mod verify;
pub mod wreath;

pub use audit::{admissibility_audit, AuditReport, AuditWitness};
pub use center::CenterBasisLabel;
pub use context::Context;
pub use correspondence::{phi, phi_preimage, solve_p_from_s, xi_closed_form, xi_count_oracle, HatVector, MainLemmaCheck, RSystem};
pub use error::{Error, Result};
pub use export::{OutputFormat, Table, SCHEMA_VERSION};
pub use family::{Family, FamilyKind};
pub use group::{builtin_group, load_group, load_group_with_cap, Builtin, FiniteGroup, GroupSpec, DEFAULT_ORDER_CAP};
pub use int::Int;
pub use label::{ClassLabel, LabelStyle, OmegaLabel};
pub use partial::{omega_of, partial_elements, pmultiply, project, PartialElement};
pub use vector::{AlgebraVector, CenterVector, IkVector};
pub use verify::{run_verify, Suite, SuiteReport, VerifyConfig, VerifyReport};
pub use wreath::{GroupElement, SupportSet, DEFAULT_BUDGET};
