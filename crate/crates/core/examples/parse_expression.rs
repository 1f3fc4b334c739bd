//! Tokenize, parse and pretty-print an expression, and show how a malformed
//! one is reported.
//!
//! ```bash
//! cargo run -p rkode --example parse_expression -- "x-2+3*e^-(x/2);"
//! ```

use rkode::{parse, tokenize, unparse};

fn main() {
    let source = std::env::args().nth(1).unwrap_or_else(|| "(x-y)/2;".to_string());

    let tokens = match tokenize(&source) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{e}\n{}", e.annotate(&source));
            std::process::exit(1);
        }
    };
    for t in &tokens {
        println!("{:>3}  {:<11} {:?}", t.position, t.kind.to_string(), t.lexeme);
    }

    match parse(&tokens) {
        Ok(expr) => {
            println!("\ntree:     {expr:?}");
            println!("unparsed: {}", unparse(&expr));
        }
        Err(e) => {
            eprintln!("\n{e}\n{}", e.annotate(&source));
            std::process::exit(1);
        }
    }

    // Unary minus sits below ^ in the grammar.
    for s in ["-x^2", "2^3^2", "(x"] {
        match rkode::parse_function(s) {
            Ok(e) => println!("{s:>6} => {e}"),
            Err(e) => println!("{s:>6} => error: {e}"),
        }
    }
}
