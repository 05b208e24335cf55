//! The symbol language, sequence and table loaders, and report output.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term (('*' | '/') term)*
//! term   := factor ('^' int)?
//! factor := 'conj(' expr ')' | '(' expr ')' | atom | const
//! const  := '1' | '-1' | 'exp(i*' real ')'
//! atom   := 'z' | 'b_i' | 'S(' real ')' | 'Sd{' angle ':' weight (',' ...)* '}'
//!         | 'B[' complex (',' complex)* ']' | 'B[@' name ']'
//!         | 'O{' source '}' | 'O{@' table '}' | 'Theta(@' name ')'
//! source := 'unit' | 'exp-cauchy' | 'cauchy:' real | 'cos' | 'log-power:' real
//! ```

mod io;
mod parser;
mod report;

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::density::{DensityReport, PointSequence};
use crate::symbol::LogModulusTable;

pub use io::{load_log_modulus, load_sequence, parse_log_modulus, parse_sequence, GeneratorSpec, LoadInfo, GENERATORS};
pub use parser::{parse_symbol, print_symbol};
pub use report::{
    density_json, symbol_json, verdict_json, write_deviation_csv, write_eval_csv, write_report, write_sequence_csv,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DslError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown reference '@{name}' at line {line}, column {col}")]
    UnknownSeqRef { name: String, line: usize, col: usize },
    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("window [{0}, {1}] is empty or selects no points")]
    EmptyWindow(f64, f64),
    #[error("{0}")]
    Io(String),
}

/// Named sequences, tables and density reports that `@name` references
/// resolve to.
#[derive(Debug, Clone, Default)]
pub struct Bindings {
    pub sequences: HashMap<String, Arc<PointSequence>>,
    pub tables: HashMap<String, Arc<LogModulusTable>>,
    /// Densities attached to `Theta(@name)` atoms.
    pub densities: HashMap<String, Arc<DensityReport>>,
}

impl Bindings {
    pub fn with_sequence(mut self, name: &str, seq: PointSequence) -> Self {
        self.sequences.insert(name.to_string(), Arc::new(seq));
        self
    }

    pub fn with_table(mut self, table: LogModulusTable) -> Self {
        self.tables.insert(table.name.clone(), Arc::new(table));
        self
    }

    pub fn with_density(mut self, name: &str, report: DensityReport) -> Self {
        self.densities.insert(name.to_string(), Arc::new(report));
        self
    }
}
