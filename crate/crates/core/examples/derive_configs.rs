//! Search for a simple-root configuration whose dual graph matches a target.
//!
//! Usage: `derive_configs <graph.json> <bl<n>|f0|f2>`. Prints the roots,
//! ordered like the circle nodes of the target graph, as JSON. With `LIST`
//! set in the environment it prints every realizable graph instead.

use std::process::ExitCode;

use dpzoo::lattice::{blowup_of_p2, hirzebruch};
use dpzoo::surface::{realizable_graphs, realize_graph, DualGraph};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    if args.len() != 3 {
        eprintln!("usage: derive_configs <graph.json> <bl<n>|f0|f2>");
        return ExitCode::from(2);
    }
    let text = std::fs::read_to_string(&args[1]).expect("read graph");
    let target: DualGraph = serde_json::from_str(&text).expect("parse graph");
    let lat = match args[2].as_str() {
        "f0" => hirzebruch(0).unwrap(),
        "f2" => hirzebruch(2).unwrap(),
        s => blowup_of_p2(s.trim_start_matches("bl").parse().expect("point count")).unwrap(),
    };
    if std::env::var_os("LIST").is_some() {
        for g in realizable_graphs(&lat, &target) {
            println!("{}", serde_json::to_string(&g).unwrap());
        }
        return ExitCode::SUCCESS;
    }
    match realize_graph(&lat, &target) {
        Some(cfg) => {
            println!("{}", serde_json::to_string(cfg.simple_roots()).unwrap());
            ExitCode::SUCCESS
        }
        None => {
            eprintln!("no configuration realizes this graph");
            ExitCode::FAILURE
        }
    }
}
