//! Regenerate the reference figure datasets and the expected-vs-computed
//! table through the same code path as `boundstate paper --out DIR`.
//!
//! ```bash
//! cargo run -p boundstate --example reference_figures -- /tmp/boundstate-figures
//! ```

use boundstate::cli;
use std::path::PathBuf;

fn main() {
    let out: PathBuf = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("boundstate-figures"));
    let code = cli::cmd_paper(&out, None);
    println!("\nwrote fig1a.csv, fig1b.csv, fig1c.csv, paper_report.json to {}", out.display());
    println!("exit code {code} (0 = every check passed)");
    std::process::exit(code);
}
