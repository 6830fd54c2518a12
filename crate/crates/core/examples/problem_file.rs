//! Drive the command-line interface on a problem file, as the `szabo`
//! binary does. Pass a path to use another file.

use std::path::PathBuf;

fn main() {
    let file = std::env::args().nth(1).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("fixtures/example36.geo")
            .display()
            .to_string()
    });
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    for args in [
        vec!["szabo", "curvature", &file],
        vec!["szabo", "szabo-charpoly", &file],
        vec!["szabo", "szabo-charpoly", "--extend", &file],
        vec!["szabo", "check", &file],
    ] {
        println!("$ {}", args.join(" "));
        let code = szabo::cli::run(args, &mut out, &mut err);
        println!("(exit {code})\n");
    }
}
