fn main() {
    std::process::exit(sn_calc::cli::run(std::env::args_os()));
}
