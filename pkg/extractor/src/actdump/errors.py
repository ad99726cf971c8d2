class ActdumpError(Exception):
    pass


class UnsupportedModel(ActdumpError):
    pass


class WeightsUnavailable(ActdumpError):
    pass


class ImageDecodeError(ActdumpError):
    pass


class EmptyDataset(ActdumpError):
    pass
