use std::io::Write;

use clap::Parser;

use hpx_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli);
    let text = serde_json::to_string_pretty(&out.json).expect("serializable");
    if out.code == hpx_cli::EXIT_INPUT && out.json.get("status").is_none() {
        if let Some(msg) = out.json.get("error").and_then(|m| m.as_str()) {
            eprintln!("hpx: {msg}");
        }
    }
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{text}");
    std::process::exit(out.code);
}
