//! Main-content extraction for web pages, plus structural tree similarity
//! for grouping pages by template.
//!
//! Two extractors work over the same parsed DOM:
//!
//! * [`coreex`] scores every element from its word and link-word counts and
//!   keeps the best one;
//! * [`econ`] starts at the longest paragraph and climbs toward the root
//!   until a parent adds no periods or commas.
//!
//! [`treedist`] compares tag trees with simple tree matching and restricted
//! top-down edit distance; [`cluster`] groups pages by that distance and
//! [`eval`] scores extractions against gold text.
//!
//! ```
//! use corex::{parse_html, Extractor, Strategy};
//!
//! let tree = parse_html("<div><a href=/>Home</a></div><p>First, a fact. Then more.</p>", "page");
//! let result = Extractor::default_for(Strategy::Econ).extract(&tree).unwrap();
//! assert_eq!(result.text, "First, a fact. Then more.");
//! ```

pub mod cluster;
pub mod coreex;
pub mod dom;
pub mod econ;
mod error;
pub mod eval;
mod extract;
pub mod stats;
pub mod treedist;

pub use dom::{parse_html, parse_html_bytes, DomNode, DomTree, NodeId, NodeKind};
pub use error::{Error, Result};
pub use extract::{fixed6, ExtractionResult, Extractor, Strategy};
