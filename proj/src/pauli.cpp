#include "stabweight/pauli.hpp"

#include <fstream>
#include <sstream>

namespace stabweight {

PauliOperator PauliOperator::parse(std::string_view text) {
    std::size_t pos = 0;
    int phase = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') phase = 2;
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase += 1;
        ++pos;
    }
    if (pos >= text.size()) throw ParseError("empty Pauli string");

    std::size_t n = text.size() - pos;
    BitVector x(n), z(n);
    for (std::size_t q = 0; q < n; ++q) {
        switch (text[pos + q]) {
            case 'I':
                break;
            case 'X':
                x.set(q, true);
                break;
            case 'Y':
                x.set(q, true);
                z.set(q, true);
                break;
            case 'Z':
                z.set(q, true);
                break;
            default:
                throw ParseError(std::string("illegal Pauli character '") + text[pos + q] + "'");
        }
    }
    return PauliOperator(std::move(x), std::move(z), phase);
}

std::string PauliOperator::str() const {
    static constexpr const char* prefixes[4] = {"", "i", "-", "-i"};
    std::string out = prefixes[phase_];
    out.reserve(out.size() + num_qubits());
    for (std::size_t q = 0; q < num_qubits(); ++q) out.push_back(letter(q));
    return out;
}

PauliOperator PauliOperator::single(std::size_t n, std::size_t q, char letter) {
    if (q >= n) throw DimensionError("qubit index out of range");
    PauliOperator p(n);
    switch (letter) {
        case 'I':
            break;
        case 'X':
            p.x_.set(q, true);
            break;
        case 'Y':
            p.x_.set(q, true);
            p.z_.set(q, true);
            break;
        case 'Z':
            p.z_.set(q, true);
            break;
        default:
            throw ParseError(std::string("illegal Pauli letter '") + letter + "'");
    }
    return p;
}

PauliOperator& PauliOperator::operator*=(const PauliOperator& other) {
    if (num_qubits() != other.num_qubits()) throw DimensionError("qubit count mismatch");

    // With letters L = i^{xz} X^x Z^z, the product picks up i^{x1 z1 + x2 z2}
    // from unpacking both letter strings, (-1)^{<z1,x2>} from commuting Z past
    // X, and i^{-x3 z3} from repacking the result into letters.
    long long phase = phase_ + other.phase_;
    phase += static_cast<long long>(x_.count_and(z_));
    phase += static_cast<long long>(other.x_.count_and(other.z_));
    phase += 2 * static_cast<long long>(z_.count_and(other.x_));
    x_ ^= other.x_;
    z_ ^= other.z_;
    phase -= static_cast<long long>(x_.count_and(z_));
    phase_ = static_cast<int>(((phase % 4) + 4) % 4);
    return *this;
}

PauliOperator PauliOperator::restricted_to(const QubitSet& s) const {
    if (s.num_qubits() != num_qubits()) throw DimensionError("qubit set size mismatch");
    std::size_t m = s.count();
    BitVector x(m), z(m);
    std::size_t out = 0;
    for (std::size_t q = 0; q < num_qubits(); ++q) {
        if (!s.contains(q)) continue;
        x.set(out, x_.get(q));
        z.set(out, z_.get(q));
        ++out;
    }
    return PauliOperator(std::move(x), std::move(z), 0);
}

PauliOperator PauliOperator::embedded(std::size_t total_qubits, std::size_t offset) const {
    if (offset + num_qubits() > total_qubits)
        throw DimensionError("embedding exceeds target register");
    BitVector x(total_qubits), z(total_qubits);
    for (std::size_t q = 0; q < num_qubits(); ++q) {
        x.set(offset + q, x_.get(q));
        z.set(offset + q, z_.get(q));
    }
    return PauliOperator(std::move(x), std::move(z), phase_);
}

std::vector<PauliOperator> read_pauli_lines(const std::string& text) {
    std::vector<PauliOperator> ops;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        ops.push_back(PauliOperator::parse(std::string_view(line).substr(start)));
        if (ops.size() > 1 && ops.back().num_qubits() != ops.front().num_qubits())
            throw DimensionError("operators in one file must share a qubit count");
    }
    return ops;
}

std::vector<PauliOperator> read_pauli_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_pauli_lines(buf.str());
}

}  // namespace stabweight
