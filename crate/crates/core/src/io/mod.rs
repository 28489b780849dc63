//! File formats and data sources.

pub mod dataset_csv;
pub mod idx;
pub mod json;
pub mod newick;
pub mod synthetic;
pub mod trace;

pub use dataset_csv::{read_dataset_csv, write_dataset_csv};
pub use idx::{load_mnist, parse_idx_images, parse_idx_labels, IdxImages, MnistCorpus};
pub use json::{from_json, to_json};
pub use synthetic::gen_uniform_square;
pub use trace::write_trace_csv;
