use clap::Parser;
use plane_lct::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (report, code) = run(&cli);
    let text = report.render(cli.format);
    if code == 0 {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    std::process::exit(code);
}
