fn main() {
    std::process::exit(fremb::main_with(std::env::args_os()));
}
