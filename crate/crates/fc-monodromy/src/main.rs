use fc_monodromy::cli;

fn main() {
    std::process::exit(cli::run());
}
