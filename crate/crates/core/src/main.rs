fn main() {
    std::process::exit(floorsum::cli::run());
}
