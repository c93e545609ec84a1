//! Drive the manifest-based analysis pipeline from code: write a manifest,
//! run the same path as `boundstate analyze --manifest F`, and read back
//! the JSON documents it produces.
//!
//! ```bash
//! cargo run -p boundstate --example analyze_manifest
//! ```

use boundstate::cli;
use std::fs;

fn main() {
    let dir = std::env::temp_dir().join("boundstate-analyze-demo");
    fs::create_dir_all(&dir).unwrap();
    let out_dir = dir.join("out");

    let manifest = format!(
        "# states to analyze: two from the catalog, one ad hoc\n\
         [tolerances]\n\
         quadrature = 1e-8\n\n\
         [output]\n\
         dir = {}\n\n\
         [state]\n\
         label = gaussian\n\
         source = catalog:gaussian\n\n\
         [state]\n\
         label = extended\n\
         source = catalog:extended\n\n\
         [state]\n\
         label = narrow-quartic\n\
         source = expr:exp(-(2*x)^4)\n",
        out_dir.display()
    );
    let manifest_path = dir.join("states.manifest");
    fs::write(&manifest_path, manifest).unwrap();

    let code = cli::cmd_analyze(&manifest_path, None, None);
    println!("\nanalyze exit code: {code}");

    for label in ["gaussian", "extended", "narrow-quartic"] {
        let path = out_dir.join(format!("{label}.analysis.json"));
        if path.exists() {
            let doc = fs::read_to_string(&path).unwrap();
            let product = doc
                .lines()
                .skip_while(|l| !l.contains("uncertainty_product"))
                .nth(1)
                .unwrap_or("")
                .trim()
                .to_string();
            println!("{label}: uncertainty product line -> {product}");
        }
    }
    println!("\nfull documents are under {}", out_dir.display());
}
