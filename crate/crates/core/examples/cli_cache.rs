//! Drive the command-line front end in process, with a result cache.

use binlength::cli::run_with;

fn main() {
    let dir = std::env::temp_dir().join(format!("binlength-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let cache = dir.join("cache.jsonl");
    let cache = cache.to_str().expect("utf-8 path");

    let runs: [&[&str]; 3] = [
        &["binlength", "--cache", cache, "length", "--form", "x^3 + y^3", "--field", "Q"],
        &["binlength", "--cache", cache, "--json", "length", "--form", "x^3 + y^3", "--field", "Q"],
        &["binlength", "--cache", cache, "--audit", "length", "--form", "x^2*y"],
    ];
    for args in runs {
        let mut out = Vec::new();
        let code = run_with(args.iter().copied(), &mut out);
        println!("$ {}\n{}(exit {code})\n", args[1..].join(" "), String::from_utf8_lossy(&out));
    }
    let _ = std::fs::remove_dir_all(&dir);
}
