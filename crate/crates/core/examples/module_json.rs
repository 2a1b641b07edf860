//! Reading a module from JSON, writing it back, and changing the field.
//!
//!     cargo run --example module_json

use interval_rank::io::{module_to_json, parse_module, AnyModule};
use interval_rank::{invariant_table, CompressionSystem, ExactField, IntervalLattice};

const SQUARE: &str = r#"{
  "poset": {"elements": ["x", "y", "z", "w"],
            "relations": [["x", "y"], ["x", "z"], ["y", "w"], ["z", "w"]]},
  "dims": {"x": 1, "y": 1, "z": 1, "w": 1},
  "maps": {"x->y": [[1]], "x->z": [["1/2"]], "y->w": [[2]], "z->w": [[4]]}
}"#;

fn main() -> interval_rank::Result<()> {
    for field in [None, Some(ExactField::Prime(5)), Some(ExactField::Prime(2))] {
        match parse_module(SQUARE, field) {
            Ok(AnyModule::Rational(m)) => {
                let lattice = IntervalLattice::enumerate(m.poset().clone(), None)?;
                println!(
                    "over Q: {:?}",
                    invariant_table(&m, &CompressionSystem::Tot, &lattice)?
                );
                println!("{}", serde_json::to_string_pretty(&module_to_json(&m))?);
            }
            Ok(AnyModule::Prime(m)) => {
                let lattice = IntervalLattice::enumerate(m.poset().clone(), None)?;
                println!(
                    "over {field:?}: {:?}",
                    invariant_table(&m, &CompressionSystem::Tot, &lattice)?
                );
            }
            // 1/2 has no meaning modulo 2
            Err(e) => println!("over {field:?}: {e}"),
        }
    }
    Ok(())
}
