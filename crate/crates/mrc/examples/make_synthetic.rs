//! Regenerates `data/synthetic.csv`: `cargo run -p mrc --example make_synthetic [rows] [seed]`.

use std::path::PathBuf;

use mrc::io::write_table;
use mrc::synth::{generate, SynthSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut spec = SynthSpec::default();
    let mut args = std::env::args().skip(1);
    if let Some(rows) = args.next() {
        spec.rows = rows.parse()?;
    }
    if let Some(seed) = args.next() {
        spec.seed = seed.parse()?;
    }
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join("synthetic.csv");
    let table = generate(spec);
    let file = std::fs::File::create(&path)?;
    write_table(file, &table.feature_names, &table.rows, table.labels.as_deref().unwrap_or_default())?;
    println!("wrote {} rows to {}", table.rows.len(), path.display());
    Ok(())
}
