//! LZ77 factorization in space proportional to the number of runs in the
//! Burrows-Wheeler transform of the reversed text.
//!
//! The text is read once to build a dynamic run-length BWT ([`Rlbwt`]) of
//! the reversed text, then walked by LF-mapping to emit LZ77 factors
//! ([`parser`]). Besides the RLBWT, the parser keeps at most two suffix-array
//! samples per BWT run ([`Sampler`]), so the working space is `O(R)` words
//! for `R` runs, independent of the text length.
//!
//! ```
//! let (factors, stats) = rlz77::parse(b"abababab").unwrap();
//! assert_eq!(rlz77::decompress(factors).unwrap(), b"abababab");
//! assert!(stats.max_samples <= 2 * stats.runs);
//! ```

pub mod alphabet;
pub mod bitvec;
pub mod codec;
pub mod dynseq;
pub mod error;
pub mod gapbv;
#[doc(hidden)]
pub mod oracles;
pub mod parser;
pub mod rlbwt;
pub mod sampler;
pub mod spsi;
mod tree;

pub use alphabet::Symbol;
pub use dynseq::DynSequence;
pub use error::{Error, Result};
pub use gapbv::GapBitvector;
pub use parser::{
    build, decompress, factorize, factorize_with, parse, Decoder, Factor, ParseOptions, ParseStats,
};
pub use rlbwt::{Interval, Rlbwt, RunBounds, Step};
pub use sampler::{SampleKind, SamplePair, Sampler};
pub use spsi::Spsi;
