//! Excursion algebras of a finite group `Gamma` with values in a finite
//! parameter target `L = Ghat x| Q`, realized inside the algebra of
//! functions on the representation stack.

pub mod bijection;
pub mod family;
pub mod functions;
pub mod functoriality;
pub mod lrep;
pub mod relations;
pub mod target;

pub use bijection::{character_bijection_report, BijectionReport};
pub use family::{eval_construction, AdmissibleFamily, Tautological};
pub use functions::{eval_gen, Convention, FirstGen, InvariantFunction};
pub use functoriality::{functoriality_report, norm_report, AdmissibleHom, FunctorialityReport, NormReport};
pub use lrep::{bridge_f, eval_second, LRep, SecondGen};
pub use relations::{relation_suite, RelationReport};
pub use target::{rep_stack, ParamTarget, RepPoint, SourceGroup};
