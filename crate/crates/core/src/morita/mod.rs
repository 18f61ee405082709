//! Morita chain between the spheres: orbit arithmetic, Picard groups, and the B_l ⊗ M_2 blocks.

mod basis;
mod blocks;
mod orbit;

pub use basis::BasisChange;
pub use blocks::{a0_block, a0_block_operator, chain_check, podles_part_check, rp2_suite};
pub use orbit::{orbit_equivalent, picard_group, PicardGroup, SphereParam};
