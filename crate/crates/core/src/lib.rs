mod bits;
pub mod ainfty;
pub mod chains;
pub mod inversion;
pub mod laurent;
pub mod ncseries;
pub mod polytope;
pub mod treealg;

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polytopes.md")]
    mod polytopes {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/inversion.md")]
    mod inversion {}
    #[doc = include_str!("../../../book/src/ainfty.md")]
    mod ainfty {}
    #[doc = include_str!("../../../book/src/normal_forms.md")]
    mod normal_forms {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
