#ifndef MCCK_ERROR_HPP
#define MCCK_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mcck {

enum class ErrorKind {
    SyntaxError,
    DanglingRf,
    LocMismatch,
    BadMode,
    DuplicateId,
    BadThread,
    PorfCyclic,
    WeakAtomicityViolated,
    MonotonicityViolated,
    TooLarge,
    RmwPresent,
    StateLimit,
    NotMinimallyCoherent,
    UnknownName,
    Unsatisfiable,
    SessionDead,
    UnknownWriter,
    WriterAlreadyConsumed,
    InvalidArgument,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DanglingRf: return "DanglingRf";
    case ErrorKind::LocMismatch: return "LocMismatch";
    case ErrorKind::BadMode: return "BadMode";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::BadThread: return "BadThread";
    case ErrorKind::PorfCyclic: return "PorfCyclic";
    case ErrorKind::WeakAtomicityViolated: return "WeakAtomicityViolated";
    case ErrorKind::MonotonicityViolated: return "MonotonicityViolated";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::RmwPresent: return "RmwPresent";
    case ErrorKind::StateLimit: return "StateLimit";
    case ErrorKind::NotMinimallyCoherent: return "NotMinimallyCoherent";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::Unsatisfiable: return "Unsatisfiable";
    case ErrorKind::SessionDead: return "SessionDead";
    case ErrorKind::UnknownWriter: return "UnknownWriter";
    case ErrorKind::WriterAlreadyConsumed: return "WriterAlreadyConsumed";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

// event_id and line are 0 when not applicable.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg, std::uint64_t event_id = 0, std::size_t line = 0)
        : std::runtime_error(format(kind, msg, event_id, line)), kind_(kind), event_id_(event_id),
          line_(line) {}

    ErrorKind kind() const { return kind_; }
    std::uint64_t event_id() const { return event_id_; }
    std::size_t line() const { return line_; }

private:
    static std::string format(ErrorKind kind, const std::string& msg, std::uint64_t id,
                              std::size_t line) {
        std::string s = to_string(kind);
        if (line)
            s += " at line " + std::to_string(line);
        if (id)
            s += " (event " + std::to_string(id) + ")";
        if (!msg.empty())
            s += ": " + msg;
        return s;
    }

    ErrorKind kind_;
    std::uint64_t event_id_;
    std::size_t line_;
};

} // namespace mcck

#endif
