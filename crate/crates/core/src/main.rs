fn main() {
    std::process::exit(visespeech::cli::run(std::env::args_os()));
}
