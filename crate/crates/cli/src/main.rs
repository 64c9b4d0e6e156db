mod format;
mod oracle_checks;

fn main() {
    std::process::exit(nmk_cli_main());
}

fn nmk_cli_main() -> i32 {
    match crate::run::run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

mod run;
