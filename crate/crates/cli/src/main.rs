fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let code = skt_cli::main_with_args(std::env::args().collect());
    std::process::exit(code);
}
