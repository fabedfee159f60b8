#include "sphereq/state_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace sphereq {

void write_state(std::ostream& os, const QubitState& state) {
    os << "n=" << state.n() << "\n";
    os << std::setprecision(17);
    for (const Complex& a : state.amplitudes()) os << a.real() << " " << a.imag() << "\n";
}

void write_state_file(const std::string& path, const QubitState& state) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open for writing: " + path);
    write_state(os, state);
}

QubitState read_state(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("n=", 0) != 0)
        throw ParseError(1, "state file must start with \"n=<int>\"");
    int n = 0;
    try {
        n = std::stoi(header.substr(2));
    } catch (const std::exception&) {
        throw ParseError(1, "bad qubit count in state header");
    }
    const std::size_t dim = std::size_t{1} << n;
    std::vector<Complex> amps;
    amps.reserve(dim);
    std::string line;
    for (std::size_t i = 0; i < dim; ++i) {
        if (!std::getline(is, line))
            throw ParseError(static_cast<int>(i + 2), "unexpected end of state file");
        std::istringstream ss(line);
        double re = 0.0, im = 0.0;
        if (!(ss >> re >> im))
            throw ParseError(static_cast<int>(i + 2), "expected \"re im\"");
        amps.emplace_back(re, im);
    }
    return QubitState(n, std::move(amps));
}

QubitState read_state_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open state file: " + path);
    return read_state(is);
}

}  // namespace sphereq
