fn main() {
    if std::env::var("TENSOR_TRACE").is_ok_and(|v| v == "1") {
        env_logger::Builder::new().filter_level(log::LevelFilter::Debug).init();
    }
    let code = tenscalc::cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
