//! Exact rank machinery over `Z`, Laurent rings and group-ring subrings.

pub mod coset;
pub mod laurent;
pub mod pdim;
pub mod smith;

pub use coset::{coset_matrix, coset_rank, full_laurent_matrix, SubLattice};
pub use laurent::{laurent_rank, LaurentMatrix, LaurentPoly};
pub use pdim::{closed_form_dimension, lex_compare, principal_dimension_metabelian, Family, PrincipalDimension};
pub use smith::{lattice_basis, smith_form, smith_rank, SmithForm};
