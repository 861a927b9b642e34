#include "core/alert.hpp"

#include <cmath>
#include <stdexcept>

namespace alertsim {

double severity_code(Severity severity) {
    switch (severity) {
        case Severity::Minor: return 1.0;
        case Severity::Moderate: return 2.0;
        case Severity::Severe: return 3.0;
        case Severity::Extreme: return 4.0;
        case Severity::Unknown: return 2.0;
    }
    return 2.0;
}

double urgency_code(Urgency urgency) {
    switch (urgency) {
        case Urgency::Immediate: return 3.0;
        case Urgency::Expected: return 2.0;
        case Urgency::Future: return 1.5;
        case Urgency::Past: return 0.5;
        case Urgency::Unknown: return 1.5;
    }
    return 1.5;
}

std::string_view severity_name(Severity severity) {
    switch (severity) {
        case Severity::Minor: return "Minor";
        case Severity::Moderate: return "Moderate";
        case Severity::Severe: return "Severe";
        case Severity::Extreme: return "Extreme";
        case Severity::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::string_view urgency_name(Urgency urgency) {
    switch (urgency) {
        case Urgency::Immediate: return "Immediate";
        case Urgency::Expected: return "Expected";
        case Urgency::Future: return "Future";
        case Urgency::Past: return "Past";
        case Urgency::Unknown: return "Unknown";
    }
    return "Unknown";
}

Severity severity_from_name(std::string_view name) {
    if (name == "Minor") return Severity::Minor;
    if (name == "Moderate") return Severity::Moderate;
    if (name == "Severe") return Severity::Severe;
    if (name == "Extreme") return Severity::Extreme;
    if (name == "Unknown") return Severity::Unknown;
    throw std::invalid_argument("unknown severity: " + std::string(name));
}

Urgency urgency_from_name(std::string_view name) {
    if (name == "Immediate") return Urgency::Immediate;
    if (name == "Expected") return Urgency::Expected;
    if (name == "Future") return Urgency::Future;
    if (name == "Past") return Urgency::Past;
    if (name == "Unknown") return Urgency::Unknown;
    throw std::invalid_argument("unknown urgency: " + std::string(name));
}

std::string_view shelter_status_name(ShelterStatus status) {
    switch (status) {
        case ShelterStatus::Open: return "open";
        case ShelterStatus::Full: return "full";
        case ShelterStatus::Closed: return "closed";
    }
    return "open";
}

ShelterStatus shelter_status_from_name(std::string_view name) {
    if (name == "open") return ShelterStatus::Open;
    if (name == "full") return ShelterStatus::Full;
    if (name == "closed") return ShelterStatus::Closed;
    throw std::invalid_argument("unknown shelter status: " + std::string(name));
}

double freshness(const Alert& alert, double now, double lambda) {
    const double issued = static_cast<double>(alert.issued_at);
    if (now < issued) {
        throw std::invalid_argument("freshness requires now >= issuedAt");
    }
    return std::exp(-lambda * (now - issued));
}

bool is_actionable(const Alert& alert) {
    return alert.urgency == Urgency::Immediate || alert.severity == Severity::Severe ||
           alert.severity == Severity::Extreme;
}

} // namespace alertsim
