//! Drive the command line in-process: generate a planted dataset, then search it.

use std::io::Write;

use polyham::cli;

fn main() {
    let dir = std::env::temp_dir().join("polyham-cli-pipeline");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let data = dir.join("planted.txt");
    let data = data.to_string_lossy();

    let steps: [&[&str]; 4] = [
        &["gen", "--kind", "planted", "--n", "200", "--d", "24", "--distance", "2", "--seed", "1", "--output", &data],
        &["closest-pair", "--input", &data, "--oracle", "--seed", "1"],
        &["max-ip", "--input", &data, "--seed", "1"],
        &["bench", "--sizes", "128,256", "--dims", "16", "--seed", "1"],
    ];
    for args in steps {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli::run(std::iter::once("polyham").chain(args.iter().copied()), &mut out, &mut err);
        println!("$ polyham {} -> exit {code}", args.join(" "));
        std::io::stdout().write_all(&out).unwrap();
        std::io::stderr().write_all(&err).unwrap();
    }
}
