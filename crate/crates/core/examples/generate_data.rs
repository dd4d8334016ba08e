//! Regenerates the bundled algebra files in `data/`.
//!
//! Usage: `cargo run -p socle-core --example generate_data -- data/`

use socle_core::fixtures;
use socle_core::io::algebra_to_json;

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "data".into());
    std::fs::create_dir_all(&dir).expect("output directory");
    let mut algebras = vec![fixtures::truncated_polynomial(2)];
    algebras.extend(fixtures::suite());
    algebras.extend(fixtures::extended_graded());
    for alg in algebras {
        let path = format!("{dir}/{}.json", alg.name());
        std::fs::write(&path, algebra_to_json(&alg) + "\n").expect("write algebra file");
        println!("wrote {path}");
    }
}
