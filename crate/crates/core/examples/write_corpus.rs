//! Regenerate the bundled corpus: `cargo run --example write_corpus -- <dir>`.

use std::path::PathBuf;

use annkh::diagram::builder::corpus;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    std::fs::create_dir_all(&dir)?;
    for f in corpus() {
        let name = f.name.clone().expect("corpus entries are named");
        std::fs::write(dir.join(format!("{name}.json")), f.to_json() + "\n")?;
    }
    Ok(())
}
