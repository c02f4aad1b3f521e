use slidechrom::cli;

fn main() {
    let res = cli::run(std::env::args_os());
    let json = std::env::args().any(|a| a == "--json");
    if json {
        println!("{}", res.json());
    } else if res.status == cli::Status::Error {
        eprintln!("{}", res.text);
    } else {
        println!("{}", res.text);
    }
    std::process::exit(res.status.exit_code());
}
