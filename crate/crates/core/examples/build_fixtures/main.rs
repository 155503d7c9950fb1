//! Regenerates the shipped fixtures: statistics store, verification cases and
//! the recorded pipeline bundle.
//!
//! ```text
//! cargo run -p touchline-core --example build_fixtures [-- OUT_DIR]
//! ```

mod bundle;
mod cases;
mod data;
mod store;

use std::io::Write;
use std::path::PathBuf;

const SEED: u64 = 20161122;

fn main() {
    let out: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"));

    let store = store::build(SEED, &cases::all_logs());
    store.write_dir(out.join("stats")).expect("write store");
    println!("stats: {} matches, {} events, {} players", store.matches().len(), store.events().len(), store.players().len());

    for case in cases::cases() {
        let dir = out.join("cases").join(case.id);
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("log.json"), case.log.to_json_pretty() + "\n").unwrap();
        let mut f = std::fs::File::create(dir.join("commentary.jsonl")).unwrap();
        writeln!(f, "{}", case.record).unwrap();
    }
    println!("cases: {}", cases::cases().len());

    bundle::write(&out.join("pipeline"), &cases::arsenal_psg(), SEED);
    println!("pipeline bundle written");
}
