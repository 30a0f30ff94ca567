use bleedmeter_core::imaging::CannyParams;
use clap::ValueEnum;

/// Canny settings tuned per dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Profile {
    Imagenet,
    Coco,
    Places,
    Danbooru,
    Yumi,
}

impl Profile {
    pub fn canny(self) -> CannyParams {
        match self {
            Self::Imagenet => CannyParams::IMAGENET,
            Self::Coco => CannyParams::COCO,
            Self::Places => CannyParams::PLACES,
            Self::Danbooru => CannyParams::DANBOORU,
            Self::Yumi => CannyParams::YUMI,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Imagenet => "imagenet",
            Self::Coco => "coco",
            Self::Places => "places",
            Self::Danbooru => "danbooru",
            Self::Yumi => "yumi",
        }
    }
}
