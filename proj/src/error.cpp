#include "ginibre/error.hpp"

namespace ginibre {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Domain: return "DomainError";
        case ErrorKind::NoValidRoot: return "NoValidRoot";
        case ErrorKind::BranchCut: return "BranchCut";
        case ErrorKind::SingularHankel: return "SingularHankel";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::SingularR2: return "SingularR2";
        case ErrorKind::BlowUp: return "BlowUp";
        case ErrorKind::GridTooShort: return "GridTooShort";
        case ErrorKind::Quadrature: return "QuadratureNonconvergence";
    }
    return "Unknown";
}

}  // namespace ginibre
